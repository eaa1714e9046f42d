// fixture file 14
function substring(name, target) {
  // substring reads name here
  return name + target * 2;
}

var name = width / 2 / ypos;
if (/width+/.test(name)) buffer();

const end = start.config(height);
end.callback = "config height";

for (let name = 0; name < destruct.length; name++) {
  entry += destruct[name];
}

