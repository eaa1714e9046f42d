#!/usr/bin/env python3
"""Writes the JavaScript fixture corpus and the occurrence counts it holds.

Every snippet template records which identifiers it places in code and with
which role.
"""
import argparse
import json
import random
from collections import defaultdict
from pathlib import Path

BENCH = [
    "substr", "substring", "setMinutes", "setSeconds", "reset", "clear",
    "rows", "columns", "setInterval", "clearInterval", "count", "total",
    "item", "entry", "miny", "ypos", "events", "rchecked", "re", "destruct",
]
FILLER = [
    "value", "index", "result", "data", "node", "list", "options", "config",
    "buffer", "offset", "width", "height", "name", "key", "callback", "target",
    "handler", "element", "parent", "child", "size", "start", "end", "limit",
]


def fn_decl(a, b, c):
    text = (f"function {a}({b}, {c}) {{\n"
            f"  // {a} reads {b} here\n"
            f"  return {b} + {c} * 2;\n"
            f"}}\n")
    return text, [(a, "function"), (b, "variable"), (c, "variable"),
                  (b, "variable"), (c, "variable")]


def call(a, b, c, d, e):
    text = (f"const {a} = {b}.{c}({d});\n"
            f"{a}.{e} = \"{c} {d}\";\n")
    return text, [(a, "variable"), (b, "variable"), (c, "function"),
                  (d, "variable"), (a, "variable"), (e, "property")]


def literal(a, b, c, d):
    text = f"let {a} = {{ {b}: 1, {c}: {d} }};\n"
    return text, [(a, "variable"), (b, "property"), (c, "property"),
                  (d, "variable")]


def regex(a, b, c, d):
    text = (f"var {a} = {b} / 2 / {c};\n"
            f"if (/{b}+/.test({a})) {d}();\n")
    return text, [(a, "variable"), (b, "variable"), (c, "variable"),
                  ("test", "function"), (a, "variable"), (d, "function")]


def template(a, b, c):
    text = f"const {a} = `value ${{{b}}} and {c}`;\n"
    return text, [(a, "variable"), (b, "variable")]


def klass(a, b, c, d):
    text = (f"class {a} extends {b} {{\n"
            f"  {c}() {{ return this.{d}; }}\n"
            f"}}\n")
    return text, [(a, "other"), (b, "variable"), (c, "function"),
                  (d, "property")]


def loop(a, b, c):
    text = (f"for (let {a} = 0; {a} < {b}.length; {a}++) {{\n"
            f"  {c} += {b}[{a}];\n"
            f"}}\n")
    return text, [(a, "variable"), (a, "variable"), (b, "variable"),
                  ("length", "property"), (a, "variable"), (c, "variable"),
                  (b, "variable"), (a, "variable")]


def noise(a, b, c):
    text = (f"/* {a} and {b}\n   span lines */\n"
            f"const {c} = '{a}\\'s' + \"{b}\\\"\";\n")
    return text, [(c, "variable")]


TEMPLATES = [(fn_decl, 3), (call, 5), (literal, 4), (regex, 4),
             (template, 3), (klass, 4), (loop, 3), (noise, 3)]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--expected", type=Path, required=True)
    parser.add_argument("--files", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    names = BENCH + FILLER
    counts = defaultdict(lambda: {"function": 0, "variable": 0,
                                  "property": 0, "other": 0})
    args.out.mkdir(parents=True, exist_ok=True)
    for i in range(args.files):
        parts = [f"// fixture file {i}\n"]
        for _ in range(rng.randint(4, 9)):
            fn, arity = rng.choice(TEMPLATES)
            text, occurrences = fn(*rng.sample(names, arity))
            parts.append(text)
            parts.append("\n")
            for name, role in occurrences:
                counts[name][role] += 1
        (args.out / f"file_{i:03d}.js").write_text("".join(parts))

    identifiers = {
        name: {"count": sum(roles.values()), "roles": roles}
        for name, roles in sorted(counts.items())
    }
    expected = {
        "files": args.files,
        "total_occurrences": sum(v["count"] for v in identifiers.values()),
        "identifiers": identifiers,
    }
    args.expected.write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
