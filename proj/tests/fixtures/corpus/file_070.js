// fixture file 70
const data = start.count(size);
data.options = "count size";

/* node and buffer
   span lines */
const rchecked = 'node\'s' + "buffer\"";

class re extends rchecked {
  setSeconds() { return this.child; }
}

class parent extends substr {
  clearInterval() { return this.destruct; }
}

for (let ypos = 0; ypos < node.length; ypos++) {
  limit += node[ypos];
}

