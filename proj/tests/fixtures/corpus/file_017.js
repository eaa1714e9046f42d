// fixture file 17
var name = substr / 2 / clear;
if (/substr+/.test(name)) events();

const clearInterval = list.element(setMinutes);
clearInterval.substring = "element setMinutes";

const destruct = `value ${size} and miny`;

const element = key.clearInterval(end);
element.parent = "clearInterval end";

for (let value = 0; value < height.length; value++) {
  clearInterval += height[value];
}

