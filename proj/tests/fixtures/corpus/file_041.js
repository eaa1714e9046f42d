// fixture file 41
let node = { result: 1, columns: clearInterval };

var item = setMinutes / 2 / target;
if (/setMinutes+/.test(item)) limit();

function end(value, columns) {
  // end reads value here
  return value + columns * 2;
}

for (let parent = 0; parent < offset.length; parent++) {
  target += offset[parent];
}

const start = `value ${options} and destruct`;

var config = node / 2 / end;
if (/node+/.test(config)) data();

/* name and buffer
   span lines */
const total = 'name\'s' + "buffer\"";

function substr(child, height) {
  // substr reads child here
  return child + height * 2;
}

