import json
import logging
from collections import namedtuple

from .ff import FieldError
from .order import DeltaSet, Point, grid, grid_schedule, point, preceq, total_order
from .poly import ArrayView, BivariatePolynomial

logger = logging.getLogger(__name__)


class LocatorError(Exception):
    MISSING_INITIAL_VALUE = 1
    INCONSISTENT_SYSTEM = 2
    NOT_IN_BASE_FIELD = 3
    CAPABILITY_EXCEEDED = 4
    BAD_SYNDROME_FILE = 5

    ERROR_CODES = {
        1: "Value missing on the delta-set",
        2: "Inconsistent system for the error coefficients",
        3: "Error coefficient outside the base field",
        4: "Support larger than the number of syndromes",
        5: "Invalid syndrome file",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = LocatorError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s (%s)" % (self.msg, msg)

    def __str__(self):
        return "LocatorError %s: %s" % (self.code, self.msg)


class PeriodicArray(ArrayView):
    """
    Doubly periodic array over the field, stored on one period. Unknown
    entries are simply absent; every lookup reduces its index mod period.
    """

    def __init__(self, period, values=None):
        self.period = Point(*period)
        self.values = {}
        for n, v in (values or {}).items():
            self.values[point(n).reduce(self.period)] = v

    @classmethod
    def from_error(cls, e, tau, alpha_pair, period):
        return cls(period, syndromes(e, tau, alpha_pair, grid(*period)))

    def lookup(self, n):
        return self.values.get(point(n).reduce(self.period))

    def __setitem__(self, n, value):
        self.values[point(n).reduce(self.period)] = value

    def __getitem__(self, n):
        value = self.lookup(n)
        if value is None:
            raise KeyError(n)
        return value

    @property
    def is_complete(self):
        return len(self.values) == self.period[0] * self.period[1]

    def known(self):
        return frozenset(self.values)

    def rows(self, field):
        return [
            [self.values.get(Point(i, j), field.zero) for j in range(self.period[1])]
            for i in range(self.period[0])]

    def __eq__(self, other):
        if not isinstance(other, PeriodicArray):
            return NotImplemented
        return self.period == other.period and self.values == other.values

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result


class ErrorPolynomial(BivariatePolynomial):
    """Polynomial whose coefficients lie in GF(q)."""

    def __init__(self, field, terms=None, q=None):
        super(ErrorPolynomial, self).__init__(field, terms)
        self.q = q
        if q is not None:
            for m, c in self.terms.items():
                if not field.in_base_field(c, q):
                    raise LocatorError(LocatorError.NOT_IN_BASE_FIELD, "%s at %s" % (c, m))

    @classmethod
    def from_polynomial(cls, f, q=None):
        return cls(f.field, f.terms, q=q)


def alpha_pair(field, period):
    return field.root_of_unity(period[0]), field.root_of_unity(period[1])


def _power_pair(pair, n):
    return pair[0] ** n[0], pair[1] ** n[1]


def syndromes(e, tau, alpha_pair, indices):
    """u_n = e(alpha^(tau + n)) for each requested n."""
    tau = point(tau)
    return {point(n): e.evaluate(_power_pair(alpha_pair, tau + point(n))) for n in indices}


def basis_delta(basis, order):
    points = sorted((f.leading_point(order) for f in basis), key=lambda p: (-p[0], p[1]))
    return DeltaSet(points)


def complete_array(basis, known, order, period):
    """
    Extend values known on S(t) to a whole period using the recurrences of
    the basis. Points are visited in the basis's own order, so every index
    m + n - LP(f) a recurrence needs has been filled before n. Walking by
    total degree instead breaks for lex bases: a term such as X2^3 under
    LP(f) = (1,0) reads u at a higher degree than n.
    """
    order = total_order(order)
    delta = basis_delta(basis, order)
    array = PeriodicArray(period, known)
    missing = [n for n in delta.members if array.lookup(n) is None]
    if missing:
        raise LocatorError(LocatorError.MISSING_INITIAL_VALUE, ",".join(str(n) for n in sorted(missing)))
    leads = [(f.leading_point(order), f) for f in basis]
    for n in grid_schedule(order, *period):
        if array.lookup(n) is not None:
            continue
        reducers = [(s, f) for s, f in leads if preceq(s, n)]
        s, f = max(reducers, key=lambda item: order.key(item[0]))
        total = f.field.zero
        for m, c in f.terms.items():
            if m != s:
                total = total + c * array[m + n - s]
        array[n] = -(total / f.terms[s])
    logger.debug("completed %sx%s array from %s known values", period[0], period[1], len(known))
    return array


def support_from_basis(basis, alpha_pair, period):
    """Common zeros alpha^n of the basis, n over one period."""
    return frozenset(
        n for n in grid(*period)
        if all(not f.evaluate(_power_pair(alpha_pair, n)) for f in basis))


def solve_linear(rows, rhs, field):
    """
    Solve rows * x = rhs by Gauss-Jordan elimination. Returns the unique
    solution, or raises InconsistentSystem.
    """
    width = len(rows[0]) if rows else 0
    matrix = [list(row) + [b] for row, b in zip(rows, rhs)]
    pivot_row = 0
    pivots = []
    for col in range(width):
        pivot = next((r for r in range(pivot_row, len(matrix)) if matrix[r][col]), None)
        if pivot is None:
            continue
        matrix[pivot_row], matrix[pivot] = matrix[pivot], matrix[pivot_row]
        inverse = matrix[pivot_row][col].inverse()
        matrix[pivot_row] = [x * inverse for x in matrix[pivot_row]]
        for r in range(len(matrix)):
            if r != pivot_row and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    if any(row[-1] for row in matrix[pivot_row:]):
        raise LocatorError(LocatorError.INCONSISTENT_SYSTEM, "no solution")
    if len(pivots) < width:
        raise LocatorError(LocatorError.INCONSISTENT_SYSTEM, "underdetermined")
    return [matrix[i][-1] for i in range(width)]


def solve_coefficients(support, syndrome_values, tau, alpha_pair, q):
    field = alpha_pair[0].field
    tau = point(tau)
    support = sorted(point(s) for s in support)
    indices = sorted(point(n) for n in syndrome_values)
    values = {point(n): v for n, v in syndrome_values.items()}
    if len(support) > len(indices):
        raise LocatorError(LocatorError.CAPABILITY_EXCEEDED, "%s > %s" % (len(support), len(indices)))
    rows = [
        [_monomial_at(s, alpha_pair, tau + n) for s in support]
        for n in indices]
    rhs = [values[n] for n in indices]
    if q == 2 or not support:
        coefficients = [field.one] * len(support)
        for row, b in zip(rows, rhs):
            total = field.zero
            for x in row:
                total = total + x
            if total != b:
                raise LocatorError(LocatorError.INCONSISTENT_SYSTEM, "syndromes not reproduced")
    else:
        coefficients = solve_linear(rows, rhs, field)
        for s, c in zip(support, coefficients):
            if not c:
                raise LocatorError(LocatorError.INCONSISTENT_SYSTEM, "zero coefficient at %s" % (s,))
            if not field.in_base_field(c, q):
                raise LocatorError(LocatorError.NOT_IN_BASE_FIELD, "%s at %s" % (c, s))
    logger.debug("solved %s coefficients from %s syndromes", len(support), len(indices))
    return ErrorPolynomial(field, dict(zip(support, coefficients)), q=q)


def _monomial_at(s, alpha_pair, n):
    x1, x2 = _power_pair(alpha_pair, n)
    return (x1 ** s[0]) * (x2 ** s[1])


TerminationVerdict = namedtuple("TerminationVerdict", ["ok", "candidate", "reason"])


def termination_check(basis, syndrome_values, tau, alpha_pair, q):
    """
    Build e_F on the common zeros of the basis and check that it reproduces
    every known syndrome.
    """
    field = alpha_pair[0].field
    period = (field.multiplicative_order(alpha_pair[0]), field.multiplicative_order(alpha_pair[1]))
    support = support_from_basis(basis, alpha_pair, period)
    try:
        candidate = solve_coefficients(support, syndrome_values, tau, alpha_pair, q)
    except LocatorError as exc:
        return TerminationVerdict(False, None, exc.msg)
    produced = syndromes(candidate, tau, alpha_pair, syndrome_values)
    if any(produced[point(n)] != v for n, v in syndrome_values.items()):
        return TerminationVerdict(False, candidate, "syndromes not reproduced")
    return TerminationVerdict(True, candidate, None)


def dump_syndromes(values, tau):
    entries = [
        {"n": [n[0], n[1]], "v": v.field.format_element(v)}
        for n, v in sorted(((point(n), v) for n, v in values.items()), key=lambda item: item[0])]
    return json.dumps({"tau": [tau[0], tau[1]], "entries": entries}, indent=2)


def load_syndromes(text, field):
    try:
        data = json.loads(text)
        tau = point(data["tau"])
        values = {point(entry["n"]): field.parse_element(entry["v"]) for entry in data["entries"]}
    except (ValueError, KeyError, TypeError, IndexError, FieldError) as exc:
        raise LocatorError(LocatorError.BAD_SYNDROME_FILE, str(exc))
    return tau, values
