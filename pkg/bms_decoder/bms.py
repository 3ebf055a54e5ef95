import logging
from collections import namedtuple

from .order import (
    DeltaSet, Point, componentwise_max, condition_check, format_points, point,
    preceq, s_of_t, total_order,
)
from .poly import BivariatePolynomial, NeedsIndex, PartialView, recurrence_value

logger = logging.getLogger(__name__)


class BmsError(Exception):
    CAPABILITY_EXCEEDED = 1
    NEGATIVE_SHIFT = 2
    NOT_NORMAL_FORM = 3
    IRREDUCIBLE_TERM = 4
    NO_AUXILIARY = 5
    MISSING_VALUE = 6

    ERROR_CODES = {
        1: "Delta-set grew beyond the capability",
        2: "Auxiliary shift is negative",
        3: "Polynomial is not in normal form",
        4: "No reducer for a term outside the delta-set",
        5: "No auxiliary polynomial fits the new defining point",
        6: "Missing value on the index set",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = BmsError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s (%s)" % (self.msg, msg)

    def __str__(self):
        return "BmsError %s: %s" % (self.code, self.msg)


class AuxEntry(namedtuple("AuxEntry", ["g", "k", "v", "span"])):
    """g stopped being valid at k with discrepancy v; span = k - LP(g)."""

    __slots__ = ()

    @classmethod
    def create(cls, g, k, v, order):
        k = point(k)
        span = k - g.leading_point(order)
        if not span.is_natural() or not v:
            raise BmsError(BmsError.NEGATIVE_SHIFT, "bad auxiliary at %s" % (k,))
        return cls(g, k, v, span)


class TraceRecord(namedtuple("TraceRecord", ["l", "F", "G", "delta", "failing"])):
    """
    State after processing l: F and G as polynomial lists (G aligned with
    the corners of delta), delta as a sorted tuple of points and the
    leading points of the polynomials that failed at l.
    """

    __slots__ = ()

    def same_as(self, other):
        return other is not None and (self.F, self.G, self.delta) == (other.F, other.G, other.delta)


BmsRun = namedtuple("BmsRun", ["basis", "delta", "trace", "condition_met"])

Classification = namedtuple("Classification", ["kind", "point", "action", "a", "b"])

# point kinds
KEPT = "kept"
TYPE_1 = "type1"
TYPE_2 = "type2"
TYPE_3 = "type3"
TYPE_4 = "type4"
BOUNDARY_X1 = "boundary_x1"
BOUNDARY_X2 = "boundary_x2"

# prescriptions
KEEP = "keep"
SHIFT = "shift"
COMBINE = "combine"


class BmsState(object):
    def __init__(self, field, order, t, normalize_steps=False, fresh_auxiliaries=False):
        self.field = field
        self.order = total_order(order)
        self.t = t
        self.normalize_steps = normalize_steps
        self.fresh_auxiliaries = fresh_auxiliaries
        self.F = [BivariatePolynomial.one(field)]
        self.G = {}
        self.delta = DeltaSet([Point(0, 0)])
        self.cursor = None

    @property
    def defining_points(self):
        return self.delta.defining_points

    def aux_list(self):
        return [self.G[c].g for c in self.delta.corners]

    def snapshot(self, l, failing=()):
        return TraceRecord(
            point(l), tuple(self.F), tuple(self.aux_list()), tuple(sorted(self.delta.members)),
            tuple(failing))


def discrepancy(state, f, values, l):
    view = values if hasattr(values, "lookup") else PartialView(values)
    value = recurrence_value(f, view, l, state.order)
    if not isinstance(value, NeedsIndex):
        return value
    try:
        reduced = _reduce(f, state.F, state.delta, state.order)
    except BmsError as exc:
        raise BmsError(BmsError.NOT_NORMAL_FORM, "%s at %s: %s" % (f, l, exc.msg))
    value = recurrence_value(reduced, view, l, state.order)
    if isinstance(value, NeedsIndex):
        # the index l - LP(f) + m lies outside S(t): the relation holds there
        logger.debug("discrepancy of %s at %s taken as zero, %s is unknown", f, l, value.index)
        return state.field.zero
    return value


def berlekamp_combine(f_a, w_a, s_list, a, aux, b, l, order=None):
    """
    X^(r - s(a)) f(a) - (w_a / v) X^aux_shift g, where g is the auxiliary
    kept for the corner (s1(b) - 1, s2(b+1) - 1) and
    r = (max(s1(a), l1 - s1(b) + 1), max(s2(a), l2 - s2(b+1) + 1)).
    """
    l = point(l)
    s_a = point(s_list[a])
    r = berlekamp_target(s_list, a, b, l)
    aux_shift = Point(r[0] - l[0] + s_list[b][0] - 1, r[1] - l[1] + s_list[b + 1][1] - 1)
    if not aux_shift.is_natural():
        raise BmsError(BmsError.NEGATIVE_SHIFT, "shift %s for a=%s, b=%s at %s" % (aux_shift, a, b, l))
    h = f_a.shift(r - s_a) - aux.g.shift(aux_shift).scale(w_a / aux.v)
    logger.debug("combine at %s: a=%s b=%s r=%s shift=%s -> %s", l, a, b, r, aux_shift, h)
    return h


def berlekamp_target(s_list, a, b, l):
    return Point(
        max(s_list[a][0], l[0] - s_list[b][0] + 1),
        max(s_list[a][1], l[1] - s_list[b + 1][1] + 1))


def general_combine(f, w, g, v, k, l, order):
    s = f.leading_point(order)
    t = g.leading_point(order)
    l, k = point(l), point(k)
    r = componentwise_max(s, l + t - k)
    shift = r - l + k - t
    if not shift.is_natural():
        raise BmsError(BmsError.NEGATIVE_SHIFT, "shift %s at %s" % (shift, l))
    return f.shift(r - s) - g.shift(shift).scale(w / v)


def _point_kind(S, l, old_points, failing):
    if S in old_points:
        return TYPE_1 if old_points.index(S) in failing else KEPT
    if S[0] > l[0]:
        return BOUNDARY_X1
    if S[1] > l[1]:
        return BOUNDARY_X2
    d = len(old_points)
    for i in range(d - 1):
        if S == (l[0] - old_points[i][0] + 1, l[1] - old_points[i + 1][1] + 1):
            return TYPE_2
    for j in range(d - 1):
        if S[0] == l[0] - old_points[j][0] + 1 and any(S[1] == p[1] for p in old_points):
            return TYPE_3
    for j in range(1, d):
        if S[1] == l[1] - old_points[j][1] + 1 and any(S[0] == p[0] for p in old_points):
            return TYPE_4
    return None


def _candidates(S, old_points):
    below = [i for i, s in enumerate(old_points) if preceq(s, S)]
    return sorted(below, key=lambda i: (
        old_points[i] != S, not (old_points[i][0] == S[0] or old_points[i][1] == S[1]), i))


def classify(state, l, failing, new_delta=None):
    """
    Prescribe a polynomial for every defining point of the grown delta-set.
    `failing` maps indices of F to their nonzero discrepancies at l.
    """
    l = point(l)
    old_points = list(state.defining_points)
    if new_delta is None:
        new_delta = state.delta.union_rectangles(l - old_points[i] for i in failing)
    result = []
    for S in new_delta.defining_points:
        kind = _point_kind(S, l, old_points, failing)
        chosen = None
        for a in _candidates(S, old_points):
            if a not in failing:
                chosen = Classification(kind, S, KEEP if old_points[a] == S else SHIFT, a, None)
                break
            if not preceq(S, l):
                chosen = Classification(kind, S, SHIFT, a, None)
                break
            for b, corner in enumerate(state.delta.corners):
                if corner in state.G and berlekamp_target(old_points, a, b, l) == S:
                    chosen = Classification(kind, S, COMBINE, a, b)
                    break
            if chosen:
                break
        if chosen is None:
            raise BmsError(BmsError.NO_AUXILIARY, "%s at %s" % (S, l))
        logger.debug("defining point %s (%s): %s from a=%s b=%s", S, kind, chosen.action, chosen.a, chosen.b)
        result.append(chosen)
    return result


def step(state, values, l):
    l = point(l)
    view = values if hasattr(values, "lookup") else PartialView(values)
    old_points = list(state.defining_points)
    failing = {}
    for i, f in enumerate(state.F):
        w = discrepancy(state, f, view, l)
        if w:
            failing[i] = w
    state.cursor = l
    if not failing:
        return state.snapshot(l)
    logger.debug("at %s failing: %s", l, ", ".join(str(state.F[i]) for i in failing))
    new_delta = state.delta.union_rectangles(l - old_points[i] for i in failing)
    if len(new_delta) > state.t:
        raise BmsError(
            BmsError.CAPABILITY_EXCEEDED, "|%s| > %s at %s" % (format_points(new_delta), state.t, l))
    new_F = []
    for item in classify(state, l, failing, new_delta):
        f_a = state.F[item.a]
        if item.action == KEEP:
            h = f_a
        elif item.action == SHIFT:
            h = f_a.shift(item.point - old_points[item.a])
        else:
            corner = state.delta.corners[item.b]
            h = berlekamp_combine(
                f_a, failing[item.a], old_points, item.a, state.G[corner], item.b, l, state.order)
        new_F.append(h)
    new_G = {}
    for corner in new_delta.corners:
        fresh = [i for i in failing if l - old_points[i] == corner]
        if corner in state.G and not (fresh and state.fresh_auxiliaries):
            new_G[corner] = state.G[corner]
        elif fresh:
            i = fresh[0]
            new_G[corner] = AuxEntry.create(state.F[i], l, failing[i], state.order)
        else:
            raise BmsError(BmsError.NO_AUXILIARY, "corner %s at %s" % (corner, l))
    failing_points = tuple(old_points[i] for i in sorted(failing))
    state.F, state.G, state.delta = new_F, new_G, new_delta
    if state.normalize_steps:
        state.F = normal_form(state.F, state.delta, state.order)
    return state.snapshot(l, failing_points)


def _reduce(f, F, delta, order):
    lp = f.leading_point(order)
    while True:
        outside = [m for m in f.terms if m != lp and m not in delta]
        if not outside:
            return f
        m = order.maximum(outside)
        reducer = next((g for g in F if preceq(g.leading_point(order), m)), None)
        if reducer is None:
            raise BmsError(BmsError.IRREDUCIBLE_TERM, "%s in %s" % (m, f))
        g_lp = reducer.leading_point(order)
        f = f - reducer.shift(m - g_lp).scale(f.terms[m] / reducer.terms[g_lp])


def normal_form(F, delta, order, values=None):
    """Reduce every non-leading term outside delta; leading points stay put."""
    order = total_order(order)
    return [_reduce(f, F, delta, order) for f in F]


def run(values, order, t, field, period=None, normalize_steps=False, stop=None, fresh_auxiliaries=False):
    order = total_order(order)
    values = {point(n): v for n, v in values.items()}
    if period is not None and any(t > r // 2 for r in period):
        raise BmsError(BmsError.CAPABILITY_EXCEEDED, "t=%s exceeds half of %s" % (t, tuple(period)))
    indices = order.sorted(s_of_t(t))
    missing = [n for n in indices if n not in values]
    if missing:
        raise BmsError(BmsError.MISSING_VALUE, format_points(missing))
    condition_met = condition_check(values, t, order.condition)
    if not condition_met:
        logger.warning("%s-condition does not hold for t=%s; continuing", order.condition, t)
    state = BmsState(field, order, t, normalize_steps=normalize_steps, fresh_auxiliaries=fresh_auxiliaries)
    view = PartialView(values, period)
    trace = []
    for l in indices:
        if stop is not None and order.compare(l, stop) > 0:
            break
        trace.append(step(state, view, l))
    basis = normal_form(state.F, state.delta, order)
    logger.debug("basis %s, delta %s", [str(f) for f in basis], format_points(state.delta))
    return BmsRun(basis, state.delta, trace, condition_met)


def berlekamp_massey(sequence, field):
    """
    Connection polynomial [1, c1, ..., cL] of the shortest linear feedback
    shift register generating `sequence`.
    """
    current = [field.one]
    previous = [field.one]
    length = 0
    gap = 1
    last = field.one
    for n, value in enumerate(sequence):
        d = value
        for i in range(1, length + 1):
            d = d + current[i] * sequence[n - i]
        if not d:
            gap += 1
            continue
        factor = d / last
        updated = current + [field.zero] * max(0, len(previous) + gap - len(current))
        for i, c in enumerate(previous):
            updated[i + gap] = updated[i + gap] - factor * c
        if 2 * length <= n:
            previous, last, length, gap = current, d, n + 1 - length, 1
        else:
            gap += 1
        current = updated
    return (current + [field.zero] * (length + 1))[:length + 1]
