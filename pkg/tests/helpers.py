"""Independent oracles and random generators shared by the test modules."""
import math

import numpy as np

from paradigms.constraint import (ConstraintStore, Eq, Leq, Prod, RealVar,
                                  Square, Sum)
from paradigms.interval import Interval, entire

# Sampled values live on a dyadic grid small enough that sums, products and
# squares of up to two levels of derived values are exact in float64.
GRID = 2.0 ** -6
SPAN = 2.0 ** 6


def hamming_oracle(n):
    """First n numbers of the form 2^a 3^b 5^c, by brute-force enumeration."""
    limit = 1
    while True:
        vals = sorted({2 ** a * 3 ** b * 5 ** c
                       for a in range(limit.bit_length() + 1)
                       for b in range(limit.bit_length() + 1)
                       for c in range(limit.bit_length() + 1)
                       if 2 ** a * 3 ** b * 5 ** c <= limit})
        if len(vals) >= n:
            return vals[:n]
        limit *= 4


def snap(x):
    return round(x / GRID) * GRID


def random_dyadic(rng, lo=-SPAN, hi=SPAN):
    return snap(rng.uniform(lo, hi))


def box_around(rng, v, allow_inf=True):
    """Random interval containing v, sometimes unbounded on a side."""
    def side():
        r = rng.random()
        if allow_inf and r < 0.1:
            return math.inf
        if r < 0.2:
            return 0.0
        return snap(rng.expovariate(1 / 4))
    return Interval(v - side(), v + side())


def sample_in(rng_np, iv, n):
    """n dyadic points inside iv (clipped to the sampling span)."""
    lo = max(iv.lb, -SPAN)
    hi = min(iv.ub, SPAN)
    if lo > hi:
        return np.empty(0)
    k_lo = math.ceil(lo / GRID)
    k_hi = math.floor(hi / GRID)
    if k_lo > k_hi:
        return np.empty(0)
    return rng_np.integers(k_lo, k_hi + 1, size=n).astype(np.float64) * GRID


def in_box(vals, iv):
    if iv.is_empty:
        return np.zeros(vals.shape, dtype=bool)
    return (vals >= iv.lb) & (vals <= iv.ub)


RELATIONS = {
    "leq": lambda x, y: x <= y,
    "eq": lambda x, y: x == y,
    "sum": lambda x, y, z: x + y == z,
    "prod": lambda x, y, z: x * y == z,
    "square": lambda x, y: x * x == y,
}

CLASSES = {"leq": Leq, "eq": Eq, "sum": Sum, "prod": Prod, "square": Square}


def random_constraint_instance(rng):
    """A single constraint over fresh vars whose box holds a planted solution."""
    kind = rng.choice(sorted(CLASSES))
    x = random_dyadic(rng, -8, 8)
    y = random_dyadic(rng, -8, 8)
    if kind == "leq":
        pt = (min(x, y), max(x, y))
    elif kind == "eq":
        pt = (x, x)
    elif kind == "square":
        pt = (x, x * x)
    elif kind == "sum":
        pt = (x, y, x + y)
    else:
        pt = (x, y, x * y)
    vars = [RealVar(f"v{i}", box_around(rng, v)) for i, v in enumerate(pt)]
    return CLASSES[kind](*vars), pt


def sample_solutions(rng_np, c, n=10_000, max_batches=20):
    """Up to n exact solutions of constraint c lying in its current box.

    Free coordinates are drawn from the box on the dyadic grid; dependent
    ones are computed exactly and the tuple kept only if it is in the box.
    """
    kind = c.kind
    boxes = [v.current for v in c.vars]
    got = []
    total = 0
    for _ in range(max_batches):
        if kind in ("leq",):
            cols = [sample_in(rng_np, boxes[0], n), sample_in(rng_np, boxes[1], n)]
        elif kind == "eq":
            x = sample_in(rng_np, boxes[0], n)
            cols = [x, x.copy()]
        elif kind == "square":
            x = sample_in(rng_np, boxes[0], n)
            cols = [x, x * x]
        else:
            x = sample_in(rng_np, boxes[0], n)
            y = sample_in(rng_np, boxes[1], n)
            if len(x) == 0 or len(y) == 0:
                break
            cols = [x, y, x + y if kind == "sum" else x * y]
        if any(len(col) == 0 for col in cols):
            break
        keep = np.ones(len(cols[0]), dtype=bool)
        for col, iv in zip(cols, boxes):
            keep &= in_box(col, iv)
        keep &= RELATIONS[kind](*cols)
        sol = np.stack([col[keep] for col in cols], axis=1)
        got.append(sol)
        total += len(sol)
        if total >= n:
            break
    if not got:
        return np.empty((0, len(c.vars)))
    return np.concatenate(got)[:n]


def random_store(rng, max_constraints=10, planted=True):
    """Random store over a small DAG of derived values.

    Returns ``(store, free, derive, planted_values)``.  ``derive(cols)`` maps
    one array per free var to an array per var id, computed exactly.  With
    ``planted`` every domain contains the planted solution; otherwise the
    domains are arbitrary and the store may well be inconsistent.
    """
    n_free = rng.randint(1, 3)
    free = [RealVar(f"f{i}") for i in range(n_free)]
    value = {v.id: random_dyadic(rng, -4, 4) for v in free}
    level = {v.id: 0 for v in free}
    recipes = []  # (var, kind, parents)
    vars = list(free)
    store = ConstraintStore()
    n = rng.randint(1, max_constraints)
    for k in range(n):
        kind = rng.choice(["leq", "eq", "sum", "prod", "square", "sum", "prod", "square"])
        shallow = [v for v in vars if level[v.id] < 2]
        if kind == "leq":
            a, b = rng.choice(vars), rng.choice(vars)
            if planted and value[a.id] > value[b.id]:
                a, b = b, a
            store.add(Leq(a, b))
            continue
        if kind == "eq":
            a = rng.choice(vars)
            w = RealVar(f"e{k}")
            value[w.id], level[w.id] = value[a.id], level[a.id]
            recipes.append((w, "eq", (a,)))
            store.add(Eq(a, w) if rng.random() < 0.5 else Eq(w, a))
            vars.append(w)
            continue
        if kind == "square":
            a = rng.choice(shallow)
            w = RealVar(f"s{k}")
            value[w.id] = value[a.id] ** 2
            level[w.id] = level[a.id] + 1
            recipes.append((w, "square", (a,)))
            store.add(Square(a, w))
            vars.append(w)
            continue
        a, b = rng.choice(shallow), rng.choice(shallow)
        w = RealVar(f"{kind[0]}{k}")
        value[w.id] = value[a.id] + value[b.id] if kind == "sum" else value[a.id] * value[b.id]
        level[w.id] = max(level[a.id], level[b.id]) + 1
        recipes.append((w, kind, (a, b)))
        if kind == "sum":
            store.add(Sum(a, b, w))
        else:
            store.add(Prod(a, b, w))
        vars.append(w)
    for v in vars:
        if planted:
            v.current = box_around(rng, value[v.id]) if rng.random() < 0.8 else entire()
        else:
            lo = random_dyadic(rng, -6, 6)
            v.current = Interval(lo, lo + snap(rng.expovariate(1 / 4)))

    def derive(cols):
        out = {v.id: col for v, col in zip(free, cols)}
        for w, kind, parents in recipes:
            p = [out[u.id] for u in parents]
            if kind == "eq":
                out[w.id] = p[0]
            elif kind == "square":
                out[w.id] = p[0] * p[0]
            elif kind == "sum":
                out[w.id] = p[0] + p[1]
            else:
                out[w.id] = p[0] * p[1]
        return out

    return store, free, derive, value


def store_solutions(rng_np, store, free, derive, n=10_000):
    """Exact solutions of the whole store inside the current domains."""
    cols = [sample_in(rng_np, v.current, n) for v in free]
    if any(len(c) == 0 for c in cols):
        return {}
    vals = derive(cols)
    keep = np.ones(n, dtype=bool)
    for v in store.vars:
        keep &= in_box(vals[v.id], v.current)
    for c in store.constraints:
        keep &= RELATIONS[c.kind](*(vals[v.id] for v in c.vars))
    return {k: col[keep] for k, col in vals.items()}
