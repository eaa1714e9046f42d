// fixture file 74
for (let clear = 0; clear < substring.length; clear++) {
  setSeconds += substring[clear];
}

function target(data, offset) {
  // target reads data here
  return data + offset * 2;
}

/* reset and parent
   span lines */
const size = 'reset\'s' + "parent\"";

for (let columns = 0; columns < clear.length; columns++) {
  events += clear[columns];
}

class handler extends miny {
  start() { return this.clear; }
}

