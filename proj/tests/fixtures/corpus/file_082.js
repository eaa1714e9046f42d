// fixture file 82
let count = { rows: 1, destruct: events };

function substring(rows, item) {
  // substring reads rows here
  return rows + item * 2;
}

const substring = `value ${parent} and size`;

/* key and ypos
   span lines */
const buffer = 'key\'s' + "ypos\"";

const result = rows.total(setMinutes);
result.rchecked = "total setMinutes";

const offset = height.element(name);
offset.rchecked = "element name";

const columns = list.setInterval(callback);
columns.element = "setInterval callback";

var miny = clearInterval / 2 / end;
if (/clearInterval+/.test(miny)) handler();

