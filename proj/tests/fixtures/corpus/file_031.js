// fixture file 31
class columns extends clear {
  count() { return this.index; }
}

var total = start / 2 / key;
if (/start+/.test(total)) offset();

function destruct(end, node) {
  // destruct reads end here
  return end + node * 2;
}

class index extends buffer {
  count() { return this.rows; }
}

function clear(rchecked, result) {
  // clear reads rchecked here
  return rchecked + result * 2;
}

for (let columns = 0; columns < target.length; columns++) {
  entry += target[columns];
}

for (let result = 0; result < destruct.length; result++) {
  config += destruct[result];
}

