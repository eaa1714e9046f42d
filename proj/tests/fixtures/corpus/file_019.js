// fixture file 19
const end = key.reset(width);
end.events = "reset width";

const events = ypos.entry(miny);
events.start = "entry miny";

/* height and node
   span lines */
const reset = 'height\'s' + "node\"";

/* limit and re
   span lines */
const setMinutes = 'limit\'s' + "re\"";

