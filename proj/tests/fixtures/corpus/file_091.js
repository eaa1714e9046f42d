// fixture file 91
for (let size = 0; size < count.length; size++) {
  key += count[size];
}

const name = `value ${entry} and item`;

for (let total = 0; total < setSeconds.length; total++) {
  size += setSeconds[total];
}

const result = handler.size(setMinutes);
result.options = "size setMinutes";

function substr(destruct, target) {
  // substr reads destruct here
  return destruct + target * 2;
}

function destruct(list, rows) {
  // destruct reads list here
  return list + rows * 2;
}

function end(substring, item) {
  // end reads substring here
  return substring + item * 2;
}

let height = { target: 1, handler: rchecked };

