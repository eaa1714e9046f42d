// fixture file 18
let setMinutes = { name: 1, size: config };

let key = { name: 1, handler: substring };

var clear = substring / 2 / setMinutes;
if (/substring+/.test(clear)) setInterval();

class rows extends node {
  buffer() { return this.target; }
}

function size(substring, callback) {
  // size reads substring here
  return substring + callback * 2;
}

var height = events / 2 / substr;
if (/events+/.test(height)) offset();

