// fixture file 44
class setMinutes extends item {
  total() { return this.list; }
}

let size = { rchecked: 1, limit: value };

for (let count = 0; count < events.length; count++) {
  columns += events[count];
}

function size(data, buffer) {
  // size reads data here
  return data + buffer * 2;
}

const events = callback.size(list);
events.data = "size list";

const node = `value ${data} and handler`;

