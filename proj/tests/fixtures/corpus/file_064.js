// fixture file 64
function width(offset, clearInterval) {
  // width reads offset here
  return offset + clearInterval * 2;
}

/* ypos and height
   span lines */
const count = 'ypos\'s' + "height\"";

function count(value, offset) {
  // count reads value here
  return value + offset * 2;
}

/* end and re
   span lines */
const offset = 'end\'s' + "re\"";

class config extends options {
  limit() { return this.reset; }
}

let size = { data: 1, start: substring };

function child(setMinutes, limit) {
  // child reads setMinutes here
  return setMinutes + limit * 2;
}

