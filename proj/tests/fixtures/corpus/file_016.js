// fixture file 16
const buffer = `value ${substr} and events`;

class index extends target {
  value() { return this.ypos; }
}

function destruct(entry, result) {
  // destruct reads entry here
  return entry + result * 2;
}

let substr = { index: 1, node: clear };

/* rchecked and name
   span lines */
const start = 'rchecked\'s' + "name\"";

