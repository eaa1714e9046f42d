// fixture file 68
for (let parent = 0; parent < element.length; parent++) {
  end += element[parent];
}

let width = { options: 1, target: rows };

const start = width.entry(clearInterval);
start.size = "entry clearInterval";

function config(substr, limit) {
  // config reads substr here
  return substr + limit * 2;
}

const clear = entry.columns(setInterval);
clear.width = "columns setInterval";

function rchecked(handler, ypos) {
  // rchecked reads handler here
  return handler + ypos * 2;
}

/* total and setSeconds
   span lines */
const data = 'total\'s' + "setSeconds\"";

let clear = { re: 1, size: target };

/* offset and end
   span lines */
const events = 'offset\'s' + "end\"";

