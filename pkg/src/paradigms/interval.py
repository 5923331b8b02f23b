"""Closed real intervals over 64-bit floats with outward rounding.

Every arithmetic result encloses the exact real image of its operands.
Bounds are rounded in the required direction exactly: an error-free
transformation (TwoSum, Dekker's product) decides whether the
round-to-nearest result already lies on the safe side, and only steps one
float outward when it does not.
"""
import math
from fractions import Fraction

INF = math.inf

# Dekker splitting is exact only away from overflow and underflow.
_SAFE_LO = 2.0 ** -480
_SAFE_HI = 2.0 ** 480
_SPLITTER = 134217729.0  # 2**27 + 1
_SAFE_MAX = 1.7976931348623157e308


def _down(x):
    return math.nextafter(x, -INF)


def _up(x):
    return math.nextafter(x, INF)


def _safe(*xs):
    return all(x == 0.0 or _SAFE_LO < abs(x) < _SAFE_HI for x in xs)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _cmp_sum(d, e):
    """Sign of the exact sum d + e of two floats."""
    if d > -e:
        return 1
    if d < -e:
        return -1
    return 0


def _cmp_exact(approx, exact):
    """Sign of approx - exact, where exact is a Fraction."""
    f = Fraction(approx)
    return (f > exact) - (f < exact)


def _round_sum(a, b, upward):
    s = a + b
    if math.isinf(a) or math.isinf(b):
        return s
    if math.isinf(s):
        # finite operands overflowed
        if upward:
            return s if s > 0 else -_SAFE_MAX
        return s if s < 0 else _SAFE_MAX
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    if upward and err > 0:
        return _up(s)
    if not upward and err < 0:
        return _down(s)
    return s


def add_dn(a, b):
    return _round_sum(a, b, False)


def add_up(a, b):
    return _round_sum(a, b, True)


def _round_prod(a, b, upward):
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if math.isinf(a) or math.isinf(b):
        return p
    if math.isinf(p):
        if upward:
            return p if p > 0 else -_SAFE_MAX
        return p if p < 0 else _SAFE_MAX
    if _safe(a, b, p):
        _, e = _two_prod(a, b)
        sign = (e < 0) - (e > 0)  # sign of p - exact
    else:
        sign = _cmp_exact(p, Fraction(a) * Fraction(b))
    if upward and sign < 0:
        return _up(p)
    if not upward and sign > 0:
        return _down(p)
    return p


def mul_dn(a, b):
    return _round_prod(a, b, False)


def mul_up(a, b):
    return _round_prod(a, b, True)


def _round_quot(a, b, upward):
    if math.isinf(b):
        # a is finite here; callers never divide infinity by infinity
        return 0.0
    q = a / b
    if math.isinf(a) or a == 0.0:
        return q
    if math.isinf(q):
        if upward:
            return q if q > 0 else -_SAFE_MAX
        return q if q < 0 else _SAFE_MAX
    if _safe(a, b, q):
        p, e = _two_prod(q, b)
        # a - q*b = (a - p) - e, and a - p is exact here
        rem = _cmp_sum(a - p, -e)
        sign = -rem if b > 0 else rem  # sign of q - a/b
    else:
        sign = _cmp_exact(q, Fraction(a) / Fraction(b))
    if upward and sign < 0:
        return _up(q)
    if not upward and sign > 0:
        return _down(q)
    return q


def div_dn(a, b):
    return _round_quot(a, b, False)


def div_up(a, b):
    return _round_quot(a, b, True)


def _round_sqrt(x, upward):
    r = math.sqrt(x)
    if math.isinf(x) or x == 0.0:
        return r
    if _safe(r, x):
        p, e = _two_prod(r, r)
        sign = _cmp_sum(p - x, e)  # sign of r*r - x
    else:
        sq = Fraction(r) ** 2
        sign = (sq > x) - (sq < x)
    if upward and sign < 0:
        return _up(r)
    if not upward and sign > 0:
        return _down(r)
    return r


def sqrt_dn(x):
    return _round_sqrt(x, False)


def sqrt_up(x):
    return _round_sqrt(x, True)


def _fmt(x):
    return format(x, ".17g")


class Interval:
    """A non-empty closed interval ``[lb, ub]``.

    Instances are immutable.  Use :func:`make` when the bounds may be
    inverted; the constructor itself rejects that case.
    """

    __slots__ = ("lb", "ub")
    is_empty = False

    def __init__(self, lb=-INF, ub=INF):
        lb = float(lb)
        ub = float(ub)
        if math.isnan(lb) or math.isnan(ub):
            raise ValueError("interval bound is NaN")
        if lb > ub:
            raise ValueError(f"inverted bounds [{lb}, {ub}]; use make() for possibly empty results")
        if lb == INF or ub == -INF:
            raise ValueError(f"interval [{lb}, {ub}] contains no real number")
        # -0.0 and 0.0 compare equal; normalize so printing is stable
        object.__setattr__(self, "lb", lb + 0.0)
        object.__setattr__(self, "ub", ub + 0.0)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        if other.is_empty:
            return False
        return self.lb == other.lb and self.ub == other.ub

    def __hash__(self):
        return hash((self.lb, self.ub))

    def __contains__(self, x):
        return self.contains(x)

    def __repr__(self):
        return f"Interval({self.lb!r}, {self.ub!r})"

    def __str__(self):
        return f"[{_fmt(self.lb)},{_fmt(self.ub)}]"

    def __reduce__(self):
        return (Interval, (self.lb, self.ub))

    def contains(self, x):
        return self.lb <= x <= self.ub

    def width(self):
        # an upward-rounded width; infinite when either bound is
        return add_up(self.ub, -self.lb)

    def is_subset(self, other):
        return not other.is_empty and other.lb <= self.lb and self.ub <= other.ub

    def is_bounded(self):
        return math.isfinite(self.lb) and math.isfinite(self.ub)


class _EmptyInterval(Interval):
    __slots__ = ()
    is_empty = True

    def __init__(self):
        pass

    def __new__(cls):
        return object.__new__(cls)

    @property
    def lb(self):
        raise ValueError("the empty interval has no lower bound")

    @property
    def ub(self):
        raise ValueError("the empty interval has no upper bound")

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return other.is_empty

    def __hash__(self):
        return hash("empty-interval")

    def __repr__(self):
        return "EMPTY"

    def __str__(self):
        return "[empty]"

    def __reduce__(self):
        return "EMPTY"

    def contains(self, x):
        return False

    def width(self):
        return 0.0

    def is_subset(self, other):
        return True

    def is_bounded(self):
        return True


EMPTY = _EmptyInterval()


def entire():
    return Interval(-INF, INF)


def make(lb, ub):
    """Interval ``[lb, ub]``, or EMPTY when ``lb > ub``."""
    if math.isnan(lb) or math.isnan(ub):
        raise ValueError("interval bound is NaN")
    if lb > ub:
        return EMPTY
    return Interval(lb, ub)


def point(x):
    return Interval(x, x)


def intersect(a, b):
    if a.is_empty or b.is_empty:
        return EMPTY
    lb = max(a.lb, b.lb)
    ub = min(a.ub, b.ub)
    if lb > ub:
        return EMPTY
    return Interval(lb, ub)


def hull(*parts):
    """Smallest interval containing every argument."""
    parts = [p for p in parts if not p.is_empty]
    if not parts:
        return EMPTY
    return Interval(min(p.lb for p in parts), max(p.ub for p in parts))


def neg(a):
    if a.is_empty:
        return EMPTY
    return Interval(-a.ub, -a.lb)


def add_out(a, b):
    if a.is_empty or b.is_empty:
        return EMPTY
    return Interval(add_dn(a.lb, b.lb), add_up(a.ub, b.ub))


def sub_out(a, b):
    if a.is_empty or b.is_empty:
        return EMPTY
    return Interval(add_dn(a.lb, -b.ub), add_up(a.ub, -b.lb))


def mul_out(a, b):
    if a.is_empty or b.is_empty:
        return EMPTY
    ends = [(x, y) for x in (a.lb, a.ub) for y in (b.lb, b.ub)]
    return Interval(min(mul_dn(x, y) for x, y in ends),
                    max(mul_up(x, y) for x, y in ends))


def _div_positive(z, y):
    # y.lb > 0
    lb = div_dn(z.lb, y.ub) if z.lb >= 0 else div_dn(z.lb, y.lb)
    ub = div_up(z.ub, y.lb) if z.ub >= 0 else div_up(z.ub, y.ub)
    return Interval(lb, ub)


def div_parts(z, y):
    """Enclosure of ``{x : x*v = w for some v in y, w in z}`` as pieces.

    Returns a list of at most two intervals.  When ``y`` straddles zero the
    relation splits into two half-lines, unless ``z`` also holds zero, in
    which case every real is possible.
    """
    if z.is_empty or y.is_empty:
        return []
    if y.lb > 0:
        return [_div_positive(z, y)]
    if y.ub < 0:
        return [_div_positive(neg(z), neg(y))]
    if z.lb <= 0 <= z.ub:
        return [entire()]
    if y.lb == 0 and y.ub == 0:
        return []
    parts = []
    if z.ub < 0:
        if y.lb < 0:
            parts.append(Interval(div_dn(z.ub, y.lb), INF))
        if y.ub > 0:
            parts.append(Interval(-INF, div_up(z.ub, y.ub)))
    else:
        if y.lb < 0:
            parts.append(Interval(-INF, div_up(z.lb, y.lb)))
        if y.ub > 0:
            parts.append(Interval(div_dn(z.lb, y.ub), INF))
    return parts


def div_out(z, y):
    """Hull of :func:`div_parts`; may be the entire line."""
    return hull(*div_parts(z, y))


def sqr_out(a):
    if a.is_empty:
        return EMPTY
    if a.lb >= 0:
        return Interval(mul_dn(a.lb, a.lb), mul_up(a.ub, a.ub))
    if a.ub <= 0:
        return Interval(mul_dn(a.ub, a.ub), mul_up(a.lb, a.lb))
    m = max(-a.lb, a.ub)
    return Interval(0.0, mul_up(m, m))


def sqrt_out(a):
    """Square root of the non-negative part of ``a``."""
    a = intersect(a, Interval(0.0, INF))
    if a.is_empty:
        return EMPTY
    return Interval(sqrt_dn(a.lb), sqrt_up(a.ub))


def bisect(a):
    """Split point strictly inside ``a``, or None when ``a`` cannot be split.

    Unbounded sides are cut at 0 or at +-2**52 so repeated bisection of an
    unbounded interval reaches finite pieces.
    """
    lb, ub = a.lb, a.ub
    if lb == -INF and ub == INF:
        return 0.0
    if ub == INF:
        m = 0.0 if lb < 0 else max(2.0 ** 52, 2.0 * lb)
        m = min(m, _SAFE_MAX)
    elif lb == -INF:
        m = 0.0 if ub > 0 else min(-(2.0 ** 52), 2.0 * ub)
        m = max(m, -_SAFE_MAX)
    else:
        m = lb / 2 + ub / 2
    if lb < m < ub:
        return m
    return None
