// fixture file 52
const handler = re.count(config);
handler.substr = "count config";

var re = setSeconds / 2 / substr;
if (/setSeconds+/.test(re)) result();

/* rows and height
   span lines */
const total = 'rows\'s' + "height\"";

/* element and result
   span lines */
const name = 'element\'s' + "result\"";

const handler = `value ${count} and re`;

