// fixture file 38
class entry extends setMinutes {
  data() { return this.index; }
}

let setMinutes = { entry: 1, events: parent };

var substr = value / 2 / options;
if (/value+/.test(substr)) limit();

class total extends child {
  destruct() { return this.reset; }
}

var setMinutes = height / 2 / target;
if (/height+/.test(setMinutes)) width();

const options = rows.list(end);
options.target = "list end";

let size = { callback: 1, clear: start };

let list = { rchecked: 1, options: re };

const options = `value ${setSeconds} and destruct`;

