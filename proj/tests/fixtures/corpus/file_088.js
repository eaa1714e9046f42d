// fixture file 88
class setInterval extends limit {
  item() { return this.child; }
}

const key = `value ${rows} and width`;

const size = `value ${setInterval} and options`;

const substr = options.target(element);
substr.columns = "target element";

/* list and handler
   span lines */
const clearInterval = 'list\'s' + "handler\"";

for (let rchecked = 0; rchecked < child.length; rchecked++) {
  parent += child[rchecked];
}

const node = buffer.offset(re);
node.result = "offset re";

const result = `value ${list} and key`;

for (let start = 0; start < value.length; start++) {
  substr += value[start];
}

