// fixture file 32
function width(item, data) {
  // width reads item here
  return item + data * 2;
}

/* item and value
   span lines */
const data = 'item\'s' + "value\"";

/* substring and size
   span lines */
const options = 'substring\'s' + "size\"";

var size = list / 2 / setMinutes;
if (/list+/.test(size)) node();

