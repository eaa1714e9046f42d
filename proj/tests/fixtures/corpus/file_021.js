// fixture file 21
const node = `value ${entry} and reset`;

const clearInterval = key.events(data);
clearInterval.setInterval = "events data";

const columns = `value ${data} and miny`;

/* height and list
   span lines */
const substring = 'height\'s' + "list\"";

let substr = { height: 1, limit: buffer };

for (let destruct = 0; destruct < clearInterval.length; destruct++) {
  options += clearInterval[destruct];
}

class node extends value {
  columns() { return this.index; }
}

