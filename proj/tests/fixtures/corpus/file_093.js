// fixture file 93
function buffer(setSeconds, child) {
  // buffer reads setSeconds here
  return setSeconds + child * 2;
}

var ypos = miny / 2 / setMinutes;
if (/miny+/.test(ypos)) count();

let value = { substr: 1, offset: destruct };

for (let parent = 0; parent < events.length; parent++) {
  height += events[parent];
}

const ypos = limit.node(element);
ypos.miny = "node element";

for (let destruct = 0; destruct < list.length; destruct++) {
  height += list[destruct];
}

function ypos(clear, total) {
  // ypos reads clear here
  return clear + total * 2;
}

let result = { node: 1, total: substr };

