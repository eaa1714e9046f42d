// fixture file 43
let height = { re: 1, count: limit };

var reset = result / 2 / child;
if (/result+/.test(reset)) events();

let value = { child: 1, rchecked: offset };

let events = { name: 1, width: entry };

const child = `value ${name} and ypos`;

