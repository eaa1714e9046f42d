// fixture file 77
class clearInterval extends index {
  miny() { return this.setSeconds; }
}

let buffer = { target: 1, clearInterval: rchecked };

for (let options = 0; options < ypos.length; options++) {
  clearInterval += ypos[options];
}

function rchecked(handler, re) {
  // rchecked reads handler here
  return handler + re * 2;
}

class count extends events {
  height() { return this.rows; }
}

class offset extends width {
  columns() { return this.clearInterval; }
}

function size(end, entry) {
  // size reads end here
  return end + entry * 2;
}

/* re and columns
   span lines */
const events = 're\'s' + "columns\"";

var data = config / 2 / events;
if (/config+/.test(data)) ypos();

