// fixture file 97
class options extends substring {
  end() { return this.offset; }
}

var list = result / 2 / size;
if (/result+/.test(list)) rows();

let re = { columns: 1, rchecked: parent };

var limit = setMinutes / 2 / list;
if (/setMinutes+/.test(limit)) parent();

let config = { item: 1, destruct: clearInterval };

for (let setMinutes = 0; setMinutes < target.length; setMinutes++) {
  destruct += target[setMinutes];
}

let handler = { miny: 1, height: key };

const config = `value ${end} and limit`;

class substr extends columns {
  start() { return this.re; }
}

