// fixture file 11
class clearInterval extends events {
  setInterval() { return this.offset; }
}

var rows = list / 2 / height;
if (/list+/.test(rows)) count();

var count = config / 2 / name;
if (/config+/.test(count)) list();

class options extends item {
  result() { return this.value; }
}

const data = substring.index(target);
data.offset = "index target";

/* substring and node
   span lines */
const index = 'substring\'s' + "node\"";

const name = `value ${reset} and columns`;

var rows = clear / 2 / events;
if (/clear+/.test(rows)) rchecked();

function total(rchecked, setInterval) {
  // total reads rchecked here
  return rchecked + setInterval * 2;
}

