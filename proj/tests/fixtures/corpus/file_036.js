// fixture file 36
var callback = end / 2 / columns;
if (/end+/.test(callback)) re();

const rchecked = `value ${handler} and data`;

const events = `value ${item} and buffer`;

var total = ypos / 2 / clearInterval;
if (/ypos+/.test(total)) re();

var value = reset / 2 / list;
if (/reset+/.test(value)) events();

var name = key / 2 / miny;
if (/key+/.test(name)) start();

const start = offset.setMinutes(rows);
start.substr = "setMinutes rows";

/* miny and buffer
   span lines */
const data = 'miny\'s' + "buffer\"";

