// fixture file 78
const node = re.options(count);
node.setSeconds = "options count";

const clearInterval = `value ${size} and substring`;

/* name and index
   span lines */
const setInterval = 'name\'s' + "index\"";

/* substr and key
   span lines */
const re = 'substr\'s' + "key\"";

let data = { config: 1, setMinutes: options };

