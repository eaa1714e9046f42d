// fixture file 95
let clear = { item: 1, rchecked: callback };

let target = { buffer: 1, offset: ypos };

let data = { result: 1, entry: list };

for (let size = 0; size < element.length; size++) {
  entry += element[size];
}

const width = `value ${name} and entry`;

var buffer = limit / 2 / setInterval;
if (/limit+/.test(buffer)) events();

/* element and data
   span lines */
const callback = 'element\'s' + "data\"";

var list = parent / 2 / name;
if (/parent+/.test(list)) entry();

let columns = { limit: 1, name: clear };

