// fixture file 25
for (let start = 0; start < ypos.length; start++) {
  destruct += ypos[start];
}

/* target and end
   span lines */
const list = 'target\'s' + "end\"";

const count = start.reset(entry);
count.name = "reset entry";

/* target and miny
   span lines */
const buffer = 'target\'s' + "miny\"";

class buffer extends config {
  setInterval() { return this.target; }
}

var ypos = clear / 2 / total;
if (/clear+/.test(ypos)) index();

