// fixture file 76
let limit = { substr: 1, offset: item };

function count(miny, reset) {
  // count reads miny here
  return miny + reset * 2;
}

class setInterval extends buffer {
  rows() { return this.node; }
}

function size(reset, buffer) {
  // size reads reset here
  return reset + buffer * 2;
}

class value extends miny {
  width() { return this.columns; }
}

