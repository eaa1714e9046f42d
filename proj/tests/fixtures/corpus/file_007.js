// fixture file 7
const miny = width.item(index);
miny.entry = "item index";

/* child and substr
   span lines */
const width = 'child\'s' + "substr\"";

class start extends clear {
  end() { return this.columns; }
}

for (let item = 0; item < width.length; item++) {
  total += width[item];
}

for (let size = 0; size < index.length; size++) {
  clear += index[size];
}

