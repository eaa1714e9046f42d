// fixture file 72
var events = element / 2 / substr;
if (/element+/.test(events)) node();

/* callback and clear
   span lines */
const result = 'callback\'s' + "clear\"";

const miny = list.element(key);
miny.events = "element key";

class width extends name {
  element() { return this.item; }
}

var entry = item / 2 / clear;
if (/item+/.test(entry)) total();

const data = `value ${handler} and result`;

for (let key = 0; key < clearInterval.length; key++) {
  ypos += clearInterval[key];
}

function height(data, rows) {
  // height reads data here
  return data + rows * 2;
}

class size extends offset {
  clear() { return this.clearInterval; }
}

