// fixture file 60
function events(rchecked, node) {
  // events reads rchecked here
  return rchecked + node * 2;
}

for (let setSeconds = 0; setSeconds < substr.length; setSeconds++) {
  reset += substr[setSeconds];
}

for (let options = 0; options < size.length; options++) {
  limit += size[options];
}

class element extends events {
  rows() { return this.miny; }
}

const list = `value ${key} and miny`;

for (let offset = 0; offset < entry.length; offset++) {
  count += entry[offset];
}

