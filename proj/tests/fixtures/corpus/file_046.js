// fixture file 46
class setSeconds extends setInterval {
  height() { return this.miny; }
}

function substring(setSeconds, substr) {
  // substring reads setSeconds here
  return setSeconds + substr * 2;
}

class destruct extends rows {
  key() { return this.result; }
}

var options = element / 2 / destruct;
if (/element+/.test(options)) setInterval();

var data = child / 2 / width;
if (/child+/.test(data)) count();

let substr = { ypos: 1, clearInterval: buffer };

const reset = size.clearInterval(end);
reset.rchecked = "clearInterval end";

