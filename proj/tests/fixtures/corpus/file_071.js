// fixture file 71
var buffer = re / 2 / substr;
if (/re+/.test(buffer)) value();

const rchecked = `value ${config} and count`;

function re(clearInterval, handler) {
  // re reads clearInterval here
  return clearInterval + handler * 2;
}

let rchecked = { target: 1, limit: height };

class callback extends clear {
  target() { return this.height; }
}

for (let item = 0; item < miny.length; item++) {
  destruct += miny[item];
}

function limit(list, offset) {
  // limit reads list here
  return list + offset * 2;
}

