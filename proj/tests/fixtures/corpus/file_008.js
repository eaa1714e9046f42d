// fixture file 8
for (let offset = 0; offset < list.length; offset++) {
  clear += list[offset];
}

let count = { setInterval: 1, substring: clearInterval };

/* start and clearInterval
   span lines */
const child = 'start\'s' + "clearInterval\"";

/* end and result
   span lines */
const clearInterval = 'end\'s' + "result\"";

let substring = { substr: 1, start: rows };

let config = { item: 1, entry: substring };

const entry = `value ${re} and name`;

var element = value / 2 / events;
if (/value+/.test(element)) callback();

for (let setInterval = 0; setInterval < setSeconds.length; setInterval++) {
  result += setSeconds[setInterval];
}

