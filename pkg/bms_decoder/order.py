import logging
from collections import namedtuple

logger = logging.getLogger(__name__)

LESS, EQUAL, GREATER = -1, 0, 1


class OrderError(Exception):
    BAD_DEFINING_POINTS = 1
    BAD_ORDER = 2
    BAD_CAPABILITY = 3
    BAD_PERIOD = 4

    ERROR_CODES = {
        1: "Points do not define a delta-set",
        2: "Unknown monomial order",
        3: "Capability must be a positive integer",
        4: "Period missing or invalid",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = OrderError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s (%s)" % (self.msg, msg)

    def __str__(self):
        return "OrderError %s: %s" % (self.code, self.msg)


class Point(namedtuple("Point", ["n1", "n2"])):
    """Exponent pair (n1, n2); + and - act componentwise."""

    __slots__ = ()

    def __add__(self, other):
        return Point(self[0] + other[0], self[1] + other[1])

    def __sub__(self, other):
        return Point(self[0] - other[0], self[1] - other[1])

    def is_natural(self):
        return self[0] >= 0 and self[1] >= 0

    def reduce(self, period):
        return Point(self[0] % period[0], self[1] % period[1])

    def __str__(self):
        return "(%s,%s)" % (self[0], self[1])


def point(value):
    return value if isinstance(value, Point) else Point(int(value[0]), int(value[1]))


def preceq(p, q):
    return p[0] <= q[0] and p[1] <= q[1]


def componentwise_max(p, q):
    return Point(max(p[0], q[0]), max(p[1], q[1]))


class TotalOrder(object):
    """
    lex: X1 > X2, compares n1 first.
    graded: total degree first, ties go to the larger n2 (X2 > X1).
    """

    KINDS = ("lex", "graded")

    def __init__(self, kind):
        if kind not in TotalOrder.KINDS:
            raise OrderError(OrderError.BAD_ORDER, kind)
        self.kind = kind

    def key(self, p):
        if self.kind == "lex":
            return (p[0], p[1])
        return (p[0] + p[1], p[1])

    def compare(self, p, q):
        kp, kq = self.key(p), self.key(q)
        if kp < kq:
            return LESS
        if kp > kq:
            return GREATER
        return EQUAL

    def maximum(self, points):
        return max(points, key=self.key)

    def sorted(self, points, reverse=False):
        return sorted(points, key=self.key, reverse=reverse)

    def next_step(self, n, r1=None, r2=None):
        n1, n2 = n
        if self.kind == "lex":
            if r2 is None:
                raise OrderError(OrderError.BAD_PERIOD, "lex successor needs r2")
            if n2 < r2 - 1:
                return Point(n1, n2 + 1)
            return Point(n1 + 1, 0)
        if n1 > 0:
            return Point(n1 - 1, n2 + 1)
        return Point(n2 + 1, 0)

    @property
    def condition(self):
        return "l" if self.kind == "lex" else "g"

    def __eq__(self, other):
        return isinstance(other, TotalOrder) and other.kind == self.kind

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "TotalOrder(%s)" % self.kind


LEX = TotalOrder("lex")
GRADED = TotalOrder("graded")


def total_order(kind):
    if isinstance(kind, TotalOrder):
        return kind
    if kind == "lex":
        return LEX
    if kind == "graded":
        return GRADED
    raise OrderError(OrderError.BAD_ORDER, kind)


def total_compare(order, p, q):
    return total_order(order).compare(p, q)


def next_step(order, n, r1, r2):
    return total_order(order).next_step(n, r1, r2)


def grid_schedule(order, r1, r2):
    """Walk the successor map from (0,0), keeping the points of the r1 x r2 grid."""
    order = total_order(order)
    n = Point(0, 0)
    visited = 0
    while visited < r1 * r2:
        if n[0] < r1 and n[1] < r2:
            visited += 1
            yield n
        n = order.next_step(n, r1, r2)


def grid(r1, r2):
    return [Point(i, j) for i in range(r1) for j in range(r2)]


def s_of_t(t):
    if t < 1:
        raise OrderError(OrderError.BAD_CAPABILITY, t)
    points = set()
    for j in range(2 * t):
        points.add(Point(0, j))
        points.add(Point(j, 0))
    for i in range(1, t):
        for j in range(1, t - i + 1):
            points.add(Point(i, j))
    return frozenset(points)


def s_of_t_size(t):
    return (t * t + 7 * t) // 2 - 1


def schedule(order, t):
    return total_order(order).sorted(s_of_t(t))


def condition_check(values, t, kind):
    """
    l-condition: u_(0,j) != 0 for some j < t.
    g-condition: u_(1,0) != 0 or u_(0,1) != 0.
    """
    if kind in ("lex", LEX):
        kind = "l"
    elif kind in ("graded", GRADED):
        kind = "g"
    if kind == "l":
        candidates = [Point(0, j) for j in range(t)]
    elif kind == "g":
        candidates = [Point(1, 0), Point(0, 1)]
    else:
        raise OrderError(OrderError.BAD_ORDER, kind)
    return any(values.get(n) for n in candidates)


def hyperbolic_set(d):
    return frozenset(
        Point(i, j) for i in range(d) for j in range(d) if (i + 1) * (j + 1) <= d)


def minkowski_sum(a, b):
    return frozenset(point(p) + point(q) for p in a for q in b)


class Region(object):
    SIGMA = "sigma"
    SIGMA_UPTO = "sigma_upto"
    DELTA_RECT = "delta_rect"

    def __init__(self, kind, anchor, bound=None, order=None):
        if kind == Region.SIGMA_UPTO and (bound is None or order is None):
            raise OrderError(OrderError.BAD_ORDER, "sigma_upto needs a bound and an order")
        self.kind = kind
        self.anchor = point(anchor)
        self.bound = bound
        self.order = order

    def __contains__(self, m):
        if self.kind == Region.SIGMA:
            return preceq(self.anchor, m)
        if self.kind == Region.SIGMA_UPTO:
            return preceq(self.anchor, m) and self.order.compare(m, self.bound) == LESS
        return m[0] >= 0 and m[1] >= 0 and preceq(m, self.anchor)

    def __repr__(self):
        return "Region(%s, %s)" % (self.kind, self.anchor)


def sigma(s):
    return Region(Region.SIGMA, s)


def sigma_upto(s, k, order):
    return Region(Region.SIGMA_UPTO, s, bound=k, order=total_order(order))


def delta_rect(s):
    return Region(Region.DELTA_RECT, s)


def rectangle(s):
    return frozenset(Point(i, j) for i in range(s[0] + 1) for j in range(s[1] + 1))


class DeltaSet(object):
    """
    Staircase given by its defining points s(1), ..., s(d), with
    s1 strictly decreasing to 0 and s2 strictly increasing from 0.
    Its corners are (s1(i) - 1, s2(i+1) - 1), one per rectangle.
    """

    def __init__(self, defining_points):
        pts = tuple(point(p) for p in defining_points)
        if not pts:
            raise OrderError(OrderError.BAD_DEFINING_POINTS, "no defining points")
        if pts[0][1] != 0 or pts[-1][0] != 0:
            raise OrderError(OrderError.BAD_DEFINING_POINTS, pts)
        for p, q in zip(pts, pts[1:]):
            if not (p[0] > q[0] and p[1] < q[1]):
                raise OrderError(OrderError.BAD_DEFINING_POINTS, pts)
        self.defining_points = pts
        self.corners = tuple(Point(p[0] - 1, q[1] - 1) for p, q in zip(pts, pts[1:]))
        members = set()
        for c in self.corners:
            members |= rectangle(c)
        self.members = frozenset(members)

    @classmethod
    def from_members(cls, members):
        members = frozenset(point(m) for m in members)
        for m in members:
            if not m.is_natural():
                raise OrderError(OrderError.BAD_DEFINING_POINTS, m)
            for p in ((m[0] - 1, m[1]), (m[0], m[1] - 1)):
                if p[0] >= 0 and p[1] >= 0 and p not in members:
                    raise OrderError(OrderError.BAD_DEFINING_POINTS, "not a staircase")
        if not members:
            return cls([Point(0, 0)])
        height = max(m[1] for m in members) + 1
        widths = [sum(1 for m in members if m[1] == j) for j in range(height)] + [0]
        pts = [Point(widths[0], 0)]
        for j in range(1, height + 1):
            if widths[j] < widths[j - 1]:
                pts.append(Point(widths[j], j))
        return cls(pts)

    def union_rectangles(self, corners):
        members = set(self.members)
        for c in corners:
            members |= rectangle(c)
        return DeltaSet.from_members(members)

    def __contains__(self, m):
        return m in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        if isinstance(other, DeltaSet):
            return self.members == other.members
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return "DeltaSet(%s)" % format_points(self)


def delta_from_points(points):
    return DeltaSet(points)


def format_points(points):
    return "{%s}" % ",".join(str(p) for p in sorted(points))


def _partitions(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_delta_sets(max_size):
    """Every delta-set with at most max_size points; column heights form a partition."""
    for size in range(max_size + 1):
        for heights in _partitions(size, size):
            yield DeltaSet.from_members(
                Point(i, j) for i, h in enumerate(heights) for j in range(h))
