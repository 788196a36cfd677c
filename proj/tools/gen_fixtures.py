#!/usr/bin/env python3
"""Writes the fixture tree: every group of order <= 8, a few groupoids, and
named bundles. Elements are numbered in breadth-first order from the
generators, identity first, so the output is stable."""

import itertools
import json
import pathlib
import sys


def closure(gens, mul, unit):
    elems = [unit]
    seen = {unit}
    i = 0
    while i < len(elems):
        for g in gens:
            h = mul(elems[i], g)
            if h not in seen:
                seen.add(h)
                elems.append(h)
        i += 1
    return elems


def table(elems, mul):
    index = {e: k for k, e in enumerate(elems)}
    rows = [[index[mul(a, b)] for b in elems] for a in elems]
    inv = [row.index(0) for row in rows]
    return {"order": len(elems), "mul": rows, "unit": 0, "inv": inv}


def cyclic(n):
    return table(list(range(n)), lambda a, b: (a + b) % n)


def product(*ns):
    unit = tuple(0 for _ in ns)
    gens = [tuple(1 if i == j else 0 for i in range(len(ns))) for j in range(len(ns))]
    mul = lambda a, b: tuple((x + y) % n for x, y, n in zip(a, b, ns))
    return table(closure(gens, mul, unit), mul)


def perm_group(n, gens):
    mul = lambda p, q: tuple(p[q[i]] for i in range(n))
    return table(closure(gens, mul, tuple(range(n))), mul)


# Quaternion units as (sign, basis) with basis 0..3 = 1, i, j, k.
QMUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def qmul(a, b):
    s, e = QMUL[(a[1], b[1])]
    return (a[0] * b[0] * s, e)


GROUPS = {
    "trivial": cyclic(1),
    "z2": cyclic(2),
    "z3": cyclic(3),
    "z4": cyclic(4),
    "v4": product(2, 2),
    "z5": cyclic(5),
    "z6": cyclic(6),
    "s3": perm_group(3, [(1, 2, 0), (1, 0, 2)]),
    "z7": cyclic(7),
    "z8": cyclic(8),
    "z4xz2": product(4, 2),
    "z2xz2xz2": product(2, 2, 2),
    "d4": perm_group(4, [(1, 2, 3, 0), (0, 3, 2, 1)]),
    "q8": table(closure([(1, 1), (1, 2)], qmul, (1, 0)), qmul),
}


def discrete(n):
    ids = list(range(n))
    comp = [[i if i == j else None for j in range(n)] for i in range(n)]
    return {"objects": n, "arrows": n, "src": ids, "tgt": ids, "ident": ids, "comp": comp, "inv": ids}


def codiscrete(n):
    # Arrow i -> j has index j * n + i.
    m = n * n
    src = [a % n for a in range(m)]
    tgt = [a // n for a in range(m)]
    comp = [[tgt[a] * n + src[b] if src[a] == tgt[b] else None for b in range(m)] for a in range(m)]
    return {"objects": n, "arrows": m, "src": src, "tgt": tgt, "ident": [o * n + o for o in range(n)],
            "comp": comp, "inv": [(a % n) * n + a // n for a in range(m)]}


def group_as_groupoid(g):
    n = g["order"]
    return {"objects": 1, "arrows": n, "src": [0] * n, "tgt": [0] * n, "ident": [g["unit"]],
            "comp": g["mul"], "inv": g["inv"]}


GROUPOIDS = {
    "discrete1": discrete(1),
    "discrete2": discrete(2),
    "discrete3": discrete(3),
    "z2_one_object": group_as_groupoid(GROUPS["z2"]),
    "codiscrete2": codiscrete(2),
}


def regular(name, base_size):
    """G x X acted on by left multiplication, projected to X."""
    g = GROUPS[name]
    n = g["order"]
    act = [[g["mul"][a][p % n] + n * (p // n) for p in range(n * base_size)] for a in range(n)]
    return {"action": {"algebra": name, "carrier": n * base_size, "act": act},
            "base": base_size, "proj": [p // n for p in range(n * base_size)]}


BUNDLES = {
    "z2_regular": regular("z2", 1),
    "z3_regular": regular("z3", 1),
    "z2_trivial_over_2": regular("z2", 2),
    "v4_regular": regular("v4", 1),
    "s3_regular": regular("s3", 1),
    "z3_trivial_over_2": regular("z3", 2),
    # Codiscrete groupoid on {0, 1} acting on its two objects.
    "codiscrete2_objects": {
        "action": {"algebra": "codiscrete2", "carrier": 2, "anchor": [0, 1],
                   "act": [[0, None], [None, 0], [1, None], [None, 1]]},
        "base": 1, "proj": [0, 0]},
    # One point over each base point, anchored at distinct objects.
    "discrete3_sections": {
        "action": {"algebra": "discrete3", "carrier": 2, "anchor": [2, 0],
                   "act": [[None, 1], [None, None], [0, None]]},
        "base": 2, "proj": [0, 1]},
}


def dump(path, name, body):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"name": name, **body}, separators=(", ", ": ")) + "\n")


def check_group(g):
    n = g["order"]
    m = g["mul"]
    for a, b, c in itertools.product(range(n), repeat=3):
        assert m[m[a][b]][c] == m[a][m[b][c]]


def main(root):
    root = pathlib.Path(root)
    for name, g in GROUPS.items():
        check_group(g)
        dump(root / "groups" / f"{name}.json", name, g)
    for name, g in GROUPOIDS.items():
        dump(root / "groupoids" / f"{name}.json", name, g)
    for name, b in BUNDLES.items():
        dump(root / "bundles" / f"{name}.json", name, b)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
