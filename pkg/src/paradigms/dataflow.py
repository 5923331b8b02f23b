"""Dataflow networks: bounded pipes between nodes that fire independently.

A node fires only when every input pipe holds an item and every output
pipe has room; otherwise ``run`` does nothing.  Because a node's output
depends only on what arrives on its inputs, the sequences observed in a
network do not depend on the order in which nodes are run.
"""
import json
from collections import deque

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


class NetworkError(ValueError):
    """Raised for malformed networks and network descriptions."""


class PipeFull(RuntimeError):
    pass


class PipeEmpty(RuntimeError):
    pass


class Pipe:
    """Bounded FIFO queue of integers."""

    def __init__(self, capacity=10, name=None):
        if capacity < 1:
            raise ValueError(f"pipe capacity must be at least 1, got {capacity}")
        self.capacity = capacity
        self.name = name
        self.buffer = deque()
        self.reader = None
        self.writer = None
        # bumped on every put/take; schedulers use it to spot activity
        self.events = 0

    def __len__(self):
        return len(self.buffer)

    def __repr__(self):
        return f"Pipe({self.name!r}, {list(self.buffer)}, capacity={self.capacity})"

    def full(self):
        return len(self.buffer) >= self.capacity

    def empty(self):
        return not self.buffer

    def put(self, v):
        if self.full():
            raise PipeFull(f"put on full pipe {self.name!r}")
        if not INT64_MIN <= v <= INT64_MAX:
            raise OverflowError(f"item {v} does not fit in 64 bits")
        self.buffer.append(v)
        self.events += 1

    def peek(self):
        if not self.buffer:
            raise PipeEmpty(f"peek on empty pipe {self.name!r}")
        return self.buffer[0]

    def take(self):
        if not self.buffer:
            raise PipeEmpty(f"take on empty pipe {self.name!r}")
        self.events += 1
        return self.buffer.popleft()


class Node:
    """A firing unit.  Subclasses implement :meth:`fire`."""

    n_in = n_out = None

    def __init__(self, inputs, outputs, name=None):
        inputs, outputs = list(inputs), list(outputs)
        self.name = name if name is not None else type(self).__name__.lower()
        if len(inputs) != self.n_in or len(outputs) != self.n_out:
            raise NetworkError(
                f"node {self.name!r}: {type(self).__name__.lower()} needs {self.n_in} input and "
                f"{self.n_out} output pipes, got {len(inputs)} and {len(outputs)}")
        self.inputs = inputs
        self.outputs = outputs

    def ready(self):
        return (all(not p.empty() for p in self.inputs)
                and all(not p.full() for p in self.outputs))

    def run(self):
        """Fire once if possible.  Returns True iff any pipe changed."""
        if not self.ready():
            return False
        self.fire()
        return True

    def fire(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class Times(Node):
    n_in = n_out = 1

    def __init__(self, multiplier, inp, out, name=None):
        super().__init__([inp], [out], name)
        self.multiplier = multiplier

    def fire(self):
        inp, = self.inputs
        self.outputs[0].put(self.multiplier * inp.peek())
        inp.take()


class Merge(Node):
    """Merge two increasing sequences, dropping duplicates.

    Equal heads are both consumed and emitted once.
    """

    n_in, n_out = 2, 1

    def __init__(self, a, b, out, name=None):
        super().__init__([a, b], [out], name)

    def fire(self):
        a, b = self.inputs
        x, y = a.peek(), b.peek()
        self.outputs[0].put(min(x, y))
        if x <= y:
            a.take()
        if y <= x:
            b.take()


class Split(Node):
    n_in, n_out = 1, 2

    def __init__(self, inp, out1, out2, name=None):
        super().__init__([inp], [out1, out2], name)

    def fire(self):
        v = self.inputs[0].take()
        for p in self.outputs:
            p.put(v)


class Probe(Node):
    """Pass items through unchanged, recording each one in ``observed``."""

    n_in = n_out = 1

    def __init__(self, inp, out, name=None, sink=None):
        super().__init__([inp], [out], name)
        self.observed = []
        self.sink = sink

    def fire(self):
        v = self.inputs[0].take()
        self.observed.append(v)
        if self.sink is not None:
            self.sink(v)
        self.outputs[0].put(v)


class Network:
    """Ordered list of nodes over pipes with exclusive endpoints.

    Each pipe may have at most one writing node and at most one reading
    node.  A pipe without a writer is a source (fed by its seed); one
    without a reader is a sink.
    """

    def __init__(self, nodes, pipes=()):
        self.nodes = list(nodes)
        self.pipes = list(pipes)
        known = {id(p) for p in self.pipes}
        for p in self.pipes:
            p.reader = p.writer = None
        for n in self.nodes:
            for p in n.inputs + n.outputs:
                if id(p) not in known:
                    known.add(id(p))
                    self.pipes.append(p)
                    p.reader = p.writer = None
        for n in self.nodes:
            for p in n.inputs:
                if p.reader is not None:
                    raise NetworkError(
                        f"pipe {p.name!r} is read by both {p.reader.name!r} and {n.name!r}")
                p.reader = n
            for p in n.outputs:
                if p.writer is not None:
                    raise NetworkError(
                        f"pipe {p.name!r} is written by both {p.writer.name!r} and {n.name!r}")
                p.writer = n

    @property
    def probes(self):
        return [n for n in self.nodes if isinstance(n, Probe)]

    def pipe(self, name):
        for p in self.pipes:
            if p.name == name:
                return p
        raise KeyError(name)

    def run_roundrobin(self, sweeps, until=None):
        """Run every node in list order, ``sweeps`` times over.

        Stops early after a sweep in which no node fired, or once
        ``until()`` is true.  Returns the number of firings.
        """
        firings = 0
        for _ in range(sweeps):
            fired = 0
            for n in self.nodes:
                if n.run():
                    fired += 1
            firings += fired
            if not fired or (until is not None and until()):
                break
        return firings

    def run_blockedset(self, max_firings, until=None):
        """Run only nodes that may have become unblocked.

        All nodes start ready.  A node that fails to fire is parked until a
        pipe it touches sees activity.  Returns a :class:`RunStats`.
        """
        stats = RunStats()
        ready = deque(self.nodes)
        in_ready = set(map(id, ready))
        stats.readied = len(ready)
        while ready and stats.firings < max_firings:
            n = ready.popleft()
            in_ready.discard(id(n))
            pipes = n.inputs + n.outputs
            before = [p.events for p in pipes]
            stats.attempts += 1
            if not n.run():
                continue
            stats.firings += 1
            for p, ev in zip(pipes, before):
                if p.events == ev:
                    continue
                for m in (p.reader, p.writer):
                    if m is not None and id(m) not in in_ready:
                        in_ready.add(id(m))
                        ready.append(m)
                        stats.readied += 1
            if until is not None and until():
                break
        return stats


class RunStats:
    def __init__(self):
        self.firings = 0
        self.attempts = 0
        self.readied = 0

    def __repr__(self):
        return (f"RunStats(firings={self.firings}, attempts={self.attempts}, "
                f"readied={self.readied})")


def build_hamming(capacity=10, order=None):
    """Kahn and MacQueen's network for the Hamming numbers.

    Pipe ``x1`` starts with a single 1; the probe ``p`` forwards ``x1`` to
    ``x2`` and records the sequence.  ``order`` optionally lists node
    names to fix the run order.
    """
    if capacity < 1:
        raise ValueError(f"pipe capacity must be at least 1, got {capacity}")
    names = "a b c d x1 x2 f g h i".split()
    P = {n: Pipe(capacity, n) for n in names}
    nodes = [
        Merge(P["a"], P["b"], P["c"], name="m1"),
        Merge(P["c"], P["d"], P["x1"], name="m2"),
        Times(2, P["f"], P["a"], name="t2"),
        Times(3, P["g"], P["b"], name="t3"),
        Times(5, P["h"], P["d"], name="t5"),
        Split(P["x2"], P["h"], P["i"], name="sp1"),
        Split(P["i"], P["f"], P["g"], name="sp2"),
        Probe(P["x1"], P["x2"], name="p"),
    ]
    if order is not None:
        by_name = {n.name: n for n in nodes}
        nodes = [by_name[k] for k in order]
    P["x1"].put(1)
    return Network(nodes, [P[n] for n in names])


def hamming_description(capacity=10):
    """The Hamming network in the JSON description format."""
    def times(name, k, i, o):
        return {"name": name, "kind": "times", "multiplier": k, "in": [i], "out": [o]}
    return {
        "pipes": [{"name": n, "capacity": capacity, "seed": [1] if n == "x1" else []}
                  for n in "a b c d x1 x2 f g h i".split()],
        "nodes": [
            {"name": "m1", "kind": "merge", "in": ["a", "b"], "out": ["c"]},
            {"name": "m2", "kind": "merge", "in": ["c", "d"], "out": ["x1"]},
            times("t2", 2, "f", "a"),
            times("t3", 3, "g", "b"),
            times("t5", 5, "h", "d"),
            {"name": "sp1", "kind": "split", "in": ["x2"], "out": ["h", "i"]},
            {"name": "sp2", "kind": "split", "in": ["i"], "out": ["f", "g"]},
            {"name": "p", "kind": "probe", "in": ["x1"], "out": ["x2"]},
        ],
    }


_ARITY = {"times": (1, 1), "merge": (2, 1), "split": (1, 2), "probe": (1, 1)}


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise NetworkError(f"{what} must be an integer, got {v!r}")
    return v


def network_from_dict(doc):
    """Build a :class:`Network` from a parsed network description."""
    if not isinstance(doc, dict):
        raise NetworkError("network description must be a JSON object")
    pipes = {}
    order = []
    for spec in doc.get("pipes", []):
        name = spec.get("name")
        if not isinstance(name, str):
            raise NetworkError(f"pipe without a name: {spec!r}")
        if name in pipes:
            raise NetworkError(f"pipe {name!r} declared twice")
        cap = _int(spec.get("capacity", 10), f"capacity of pipe {name!r}")
        if cap < 1:
            raise NetworkError(f"pipe {name!r}: capacity must be at least 1, got {cap}")
        p = Pipe(cap, name)
        seed = spec.get("seed", [])
        if len(seed) > cap:
            raise NetworkError(f"pipe {name!r}: seed of {len(seed)} items exceeds capacity {cap}")
        for v in seed:
            p.put(_int(v, f"seed item of pipe {name!r}"))
        pipes[name] = p
        order.append(p)

    nodes = []
    seen = set()
    for spec in doc.get("nodes", []):
        name = spec.get("name")
        if not isinstance(name, str):
            raise NetworkError(f"node without a name: {spec!r}")
        if name in seen:
            raise NetworkError(f"node {name!r} declared twice")
        seen.add(name)
        kind = spec.get("kind")
        if kind not in _ARITY:
            raise NetworkError(f"node {name!r}: unknown kind {kind!r}")
        ins, outs = spec.get("in", []), spec.get("out", [])
        n_in, n_out = _ARITY[kind]
        if len(ins) != n_in or len(outs) != n_out:
            raise NetworkError(
                f"node {name!r}: {kind} needs {n_in} input and {n_out} output pipes, "
                f"got {len(ins)} and {len(outs)}")
        for pn in ins + outs:
            if pn not in pipes:
                raise NetworkError(f"node {name!r} refers to undeclared pipe {pn!r}")
        i = [pipes[pn] for pn in ins]
        o = [pipes[pn] for pn in outs]
        if kind == "times":
            if "multiplier" not in spec:
                raise NetworkError(f"node {name!r}: times needs a multiplier")
            nodes.append(Times(_int(spec["multiplier"], f"multiplier of node {name!r}"),
                               i[0], o[0], name=name))
        elif kind == "merge":
            nodes.append(Merge(i[0], i[1], o[0], name=name))
        elif kind == "split":
            nodes.append(Split(i[0], o[0], o[1], name=name))
        else:
            nodes.append(Probe(i[0], o[0], name=name))
    return Network(nodes, order)


def load_network(path):
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise NetworkError(f"{path}: not valid JSON: {e}") from None
    return network_from_dict(doc)
