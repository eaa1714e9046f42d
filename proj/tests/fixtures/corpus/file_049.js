// fixture file 49
var clear = name / 2 / substr;
if (/name+/.test(clear)) count();

const ypos = `value ${item} and count`;

class item extends node {
  index() { return this.parent; }
}

var node = size / 2 / end;
if (/size+/.test(node)) callback();

/* width and key
   span lines */
const substr = 'width\'s' + "key\"";

function config(miny, handler) {
  // config reads miny here
  return miny + handler * 2;
}

