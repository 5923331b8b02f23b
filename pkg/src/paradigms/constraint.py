"""Interval constraints: shared real unknowns, primitive relations, solving.

A :class:`RealVar` stands for a real number we do not know; its
``current`` interval is the set of values still possible.  Constraints
hold references to RealVars, so constraints that mention the same unknown
narrow the same cell.
"""
import enum
import itertools
import math
from collections import deque
from dataclasses import dataclass

from .interval import (Interval, add_out, bisect, div_parts, entire,
                       hull, intersect, mul_out, neg, sqr_out, sqrt_out,
                       sub_out)

DEFAULT_MAX_ROUNDS = 1000

_ids = itertools.count()


class RealVar:
    """A real unknown whose possible values form an interval."""

    def __init__(self, name=None, current=None):
        self.id = next(_ids)
        self.name = name if name is not None else f"v{self.id}"
        self.current = entire() if current is None else current

    @classmethod
    def constant(cls, value, name=None):
        return cls(name, Interval(value, value))

    @property
    def is_empty(self):
        return self.current.is_empty

    def narrow(self, iv):
        """Intersect ``current`` with ``iv``; True iff the result is non-empty."""
        self.current = intersect(self.current, iv)
        return not self.current.is_empty

    def __repr__(self):
        return f"RealVar({self.name!r}, {self.current!r})"

    def __str__(self):
        return f"{self.name}: {self.current}"


class Constraint:
    """Base class for primitive constraints.

    Subclasses fix ``kind`` and ``arity`` and implement :meth:`shrinc`, the
    contraction operator.  ``shrinc`` returns False iff some variable it
    touches became empty.
    """

    kind = None
    arity = None

    def __init__(self, *vars):
        if len(vars) != self.arity:
            raise TypeError(f"{self.kind} takes {self.arity} variables, got {len(vars)}")
        for v in vars:
            if not isinstance(v, RealVar):
                raise TypeError(f"{self.kind} expects RealVar arguments, got {type(v).__name__}")
        self.vars = tuple(vars)

    def shrinc(self):
        raise NotImplementedError

    def __repr__(self):
        names = ", ".join(v.name for v in self.vars)
        return f"{self.kind}({names})"


class Leq(Constraint):
    """x <= y"""

    kind = "leq"
    arity = 2

    def shrinc(self):
        x, y = self.vars
        if x.is_empty or y.is_empty:
            return False
        return (x.narrow(Interval(-math.inf, y.current.ub))
                and y.narrow(Interval(x.current.lb, math.inf)))


class Eq(Constraint):
    """x == y"""

    kind = "eq"
    arity = 2

    def shrinc(self):
        x, y = self.vars
        both = intersect(x.current, y.current)
        x.current = both
        y.current = both
        return not both.is_empty


class Sum(Constraint):
    """x + y == z"""

    kind = "sum"
    arity = 3

    def shrinc(self):
        x, y, z = self.vars
        return (x.narrow(sub_out(z.current, y.current))
                and y.narrow(sub_out(z.current, x.current))
                and z.narrow(add_out(x.current, y.current)))


def _narrow_div(v, num, den):
    # keep only the pieces of the relational quotient that meet v
    cur = v.current
    v.current = hull(*(intersect(cur, p) for p in div_parts(num, den)))
    return not v.current.is_empty


class Prod(Constraint):
    """x * y == z"""

    kind = "prod"
    arity = 3

    def shrinc(self):
        x, y, z = self.vars
        if x.is_empty or y.is_empty or z.is_empty:
            return False
        return (_narrow_div(x, z.current, y.current)
                and _narrow_div(y, z.current, x.current)
                and z.narrow(mul_out(x.current, y.current)))


class Square(Constraint):
    """x**2 == y"""

    kind = "square"
    arity = 2

    def shrinc(self):
        x, y = self.vars
        if not y.narrow(sqr_out(x.current)):
            return False
        root = sqrt_out(y.current)
        cur = x.current
        x.current = hull(intersect(cur, root), intersect(cur, neg(root)))
        return not x.current.is_empty


KINDS = {cls.kind: cls for cls in (Leq, Eq, Sum, Prod, Square)}


class ConstraintStore:
    """Ordered collection of constraints plus every variable they mention."""

    def __init__(self, constraints=()):
        self.constraints = []
        self.vars = []
        self._seen = set()
        self._users = {}
        for c in constraints:
            self.add(c)

    def add_var(self, v):
        if v.id not in self._seen:
            self._seen.add(v.id)
            self.vars.append(v)
        return v

    def add(self, c):
        self.constraints.append(c)
        for v in c.vars:
            self.add_var(v)
            users = self._users.setdefault(v.id, [])
            if c not in users:
                users.append(c)
        return c

    def users(self, var):
        """Constraints that reference ``var``, in store order."""
        return self._users.get(var.id, [])

    def snapshot(self):
        return {v.id: v.current for v in self.vars}

    def restore(self, snap):
        for v in self.vars:
            v.current = snap[v.id]

    def box(self, vars=None):
        return tuple(v.current for v in (self.vars if vars is None else vars))

    def __len__(self):
        return len(self.constraints)

    def __iter__(self):
        return iter(self.constraints)


class Status(enum.Enum):
    FIXPOINT = "fixpoint"
    INCONSISTENT = "inconsistent"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class PropagationOutcome:
    status: Status
    rounds_used: int

    @property
    def ok(self):
        return self.status is not Status.INCONSISTENT


def _changed_vars(c, before):
    return [v for v, old in zip(c.vars, before) if v.current != old]


def propagate_roundrobin(store, max_rounds=DEFAULT_MAX_ROUNDS, on_round=None):
    """Sweep the constraints in order until nothing changes.

    ``on_round(k)`` is called after each complete sweep ``k`` (1-based).
    ``rounds_used`` counts sweeps started.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    for rnd in range(1, max_rounds + 1):
        changed = False
        for c in store.constraints:
            before = [v.current for v in c.vars]
            if not c.shrinc():
                return PropagationOutcome(Status.INCONSISTENT, rnd)
            if not changed and _changed_vars(c, before):
                changed = True
        if on_round is not None:
            on_round(rnd)
        if not changed:
            return PropagationOutcome(Status.FIXPOINT, rnd)
    return PropagationOutcome(Status.BUDGET_EXHAUSTED, max_rounds)


def propagate_worklist(store, max_steps=None):
    """Propagate with a FIFO worklist of constraints.

    When a contraction changes a variable, every constraint using that
    variable goes back on the list (the one just applied included).
    ``rounds_used`` reports the number of shrinc calls.  Reaches the same
    fixpoint as :func:`propagate_roundrobin`.
    """
    queue = deque(store.constraints)
    queued = set(map(id, queue))
    steps = 0
    while queue:
        if max_steps is not None and steps >= max_steps:
            return PropagationOutcome(Status.BUDGET_EXHAUSTED, steps)
        c = queue.popleft()
        queued.discard(id(c))
        before = [v.current for v in c.vars]
        steps += 1
        if not c.shrinc():
            return PropagationOutcome(Status.INCONSISTENT, steps)
        for v in _changed_vars(c, before):
            for other in store.users(v):
                if id(other) not in queued:
                    queued.add(id(other))
                    queue.append(other)
    return PropagationOutcome(Status.FIXPOINT, steps)


def _propagate(store, method, max_rounds):
    if method == "roundrobin":
        return propagate_roundrobin(store, max_rounds)
    if method == "worklist":
        return propagate_worklist(store)
    raise ValueError(f"unknown propagation method {method!r}")


def solve(store, targets, eps, max_rounds=DEFAULT_MAX_ROUNDS,
          method="worklist", max_boxes=None):
    """Branch and prune over ``targets``.

    Returns a list of boxes (tuples of target intervals) whose union holds
    every real solution.  A branch stops splitting once every target is at
    most ``eps`` wide, or when its widest target holds no float strictly
    between its bounds.  Left halves are explored first.  On return the
    store's variables are back in their initial state.
    """
    if not (eps > 0):
        raise ValueError(f"eps must be positive, got {eps!r}")
    targets = list(targets)
    for v in targets:
        store.add_var(v)
    start = store.snapshot()
    boxes = []
    stack = [start]
    try:
        while stack:
            store.restore(stack.pop())
            outcome = _propagate(store, method, max_rounds)
            if outcome.status is Status.INCONSISTENT:
                continue
            wide = [v for v in targets if not v.current.width() <= eps]
            wide.sort(key=lambda v: v.current.width(), reverse=True)
            var = mid = None
            for v in wide:
                mid = bisect(v.current)
                if mid is not None:
                    var = v
                    break
            if var is None:
                boxes.append(store.box(targets))
                if max_boxes is not None and len(boxes) >= max_boxes:
                    break
                continue
            whole = var.current
            var.current = Interval(mid, whole.ub)
            stack.append(store.snapshot())
            var.current = Interval(whole.lb, mid)
            stack.append(store.snapshot())
    finally:
        store.restore(start)
    return boxes


def circle_parabola(positive_x=False):
    """The circle x^2 + y^2 = 1 meets the parabola y = x^2.

    Returns ``(store, x, y)`` with the system decomposed into primitives.
    With ``positive_x`` the constraint 0.5 <= x picks the right-hand point.
    """
    x, y = RealVar("x"), RealVar("y")
    x2, y2 = RealVar("x2"), RealVar("y2")
    one = RealVar.constant(1.0, "_1")
    store = ConstraintStore([
        Square(x, x2), Square(y, y2), Sum(x2, y2, one), Eq(y, x2),
    ])
    if positive_x:
        store.add(Leq(RealVar.constant(0.5, "_0"), x))
    return store, x, y


def format_solution(vars):
    return "\n".join(str(v) for v in vars)


__all__ = [
    "RealVar", "Constraint", "Leq", "Eq", "Sum", "Prod", "Square", "KINDS",
    "ConstraintStore", "Status", "PropagationOutcome", "propagate_roundrobin",
    "propagate_worklist", "solve", "circle_parabola", "format_solution",
    "DEFAULT_MAX_ROUNDS",
]
