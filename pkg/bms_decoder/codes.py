import json
import logging
from collections import namedtuple
from math import gcd

from . import bms
from .ff import Field, smallest_field_for
from .locator import ErrorPolynomial, alpha_pair, solve_coefficients, support_from_basis
from .order import Point, condition_check, grid, point, s_of_t, total_order
from .poly import BivariatePolynomial

logger = logging.getLogger(__name__)


class CodeError(Exception):
    NOT_COPRIME = 1
    CAPABILITY_TOO_LARGE = 2
    DEGENERATE_BOUND = 3
    NO_TAU = 4
    NOT_CODEWORD_AFTER_CORRECTION = 5
    BAD_WORD = 6
    BAD_BOUND_PARAMETERS = 7
    NOT_CLOSED = 8
    WEIGHT_EXCEEDS_CAPABILITY = 9
    BAD_CODE_CONFIG = 10

    ERROR_CODES = {
        1: "Period and field size are not coprime",
        2: "Capability exceeds half the period",
        3: "BCH bound gives no correction capability",
        4: "No translate of S(t) inside the defining set",
        5: "Corrected word is not a codeword",
        6: "Invalid word",
        7: "Invalid BCH bound parameters",
        8: "Defining set is not a union of q-orbits",
        9: "Recovered error is heavier than the capability",
        10: "Invalid code configuration",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = CodeError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s (%s)" % (self.msg, msg)

    def __str__(self):
        return "CodeError %s: %s" % (self.code, self.msg)


def q_orbit(a, q, r1, r2):
    a = point(a)
    orbit = []
    current = Point(a[0] % r1, a[1] % r2)
    while current not in orbit:
        orbit.append(current)
        current = Point((current[0] * q) % r1, (current[1] * q) % r2)
    return frozenset(orbit)


class AbelianCode(object):
    """
    Ideal of F(r1, r2) = GF(q)[X1, X2] / (X1^r1 - 1, X2^r2 - 1), given by the
    exponents n whose alpha^n are common zeros of every codeword.
    """

    def __init__(self, field, r1, r2, q, defining_set, orbits=None):
        if gcd(r1 * r2, q) != 1:
            raise CodeError(CodeError.NOT_COPRIME, "gcd(%s, %s) != 1" % (r1 * r2, q))
        field.subfield_degree(q)
        self.field = field
        self.r1 = r1
        self.r2 = r2
        self.q = q
        self.defining_set = frozenset(point(n) for n in defining_set)
        for n in self.defining_set:
            if Point((n[0] * q) % r1, (n[1] * q) % r2) not in self.defining_set:
                raise CodeError(CodeError.NOT_CLOSED, "%s" % (n,))
        self.orbits = [point(a) for a in orbits] if orbits is not None else None
        self.alpha_pair = alpha_pair(field, (r1, r2))

    @property
    def period(self):
        return (self.r1, self.r2)

    @classmethod
    def from_config(cls, cfg, field=None):
        try:
            if field is None:
                field = Field.from_config(cfg["field"])
            return code_create(int(cfg["r1"]), int(cfg["r2"]), int(cfg["q"]), cfg.get("orbits", []), field=field)
        except (KeyError, TypeError, ValueError) as exc:
            raise CodeError(CodeError.BAD_CODE_CONFIG, str(exc))

    def to_config(self):
        return {
            "r1": self.r1,
            "r2": self.r2,
            "q": self.q,
            "field": self.field.to_config(),
            "orbits": [[a[0], a[1]] for a in (self.orbits or sorted(self.defining_set))],
        }

    def syndrome_at(self, word, n):
        n = point(n)
        return word.evaluate((self.alpha_pair[0] ** n[0], self.alpha_pair[1] ** n[1]))

    def is_codeword(self, word):
        return all(not self.syndrome_at(word, n) for n in self.defining_set)

    def __repr__(self):
        return "AbelianCode(%sx%s, q=%s, |D|=%s)" % (self.r1, self.r2, self.q, len(self.defining_set))


def code_create(r1, r2, q, orbits, field=None):
    if gcd(r1 * r2, q) != 1:
        raise CodeError(CodeError.NOT_COPRIME, "gcd(%s, %s) != 1" % (r1 * r2, q))
    if field is None:
        field = smallest_field_for(q, (r1, r2))
    defining_set = set()
    for a in orbits:
        defining_set |= q_orbit(a, q, r1, r2)
    return AbelianCode(field, r1, r2, q, defining_set, orbits=orbits)


class Word(object):
    """Coefficient grid of a polynomial of F(r1, r2), rows indexed by the X1 exponent."""

    def __init__(self, field, r1, r2, coefficients=None, q=None):
        self.field = field
        self.r1 = r1
        self.r2 = r2
        self.q = q
        self.coefficients = {}
        for n, c in (coefficients or {}).items():
            n = point(n)
            if not (0 <= n[0] < r1 and 0 <= n[1] < r2):
                raise CodeError(CodeError.BAD_WORD, "index %s outside %sx%s" % (n, r1, r2))
            if q is not None and not field.in_base_field(c, q):
                raise CodeError(CodeError.BAD_WORD, "coefficient %s at %s not in GF(%s)" % (c, n, q))
            if c:
                self.coefficients[n] = c

    @classmethod
    def zero(cls, code):
        return cls(code.field, code.r1, code.r2, q=code.q)

    @classmethod
    def from_polynomial(cls, f, r1, r2, q=None):
        reduced = BivariatePolynomial(f.field)
        for m, c in f.terms.items():
            reduced = reduced + BivariatePolynomial.monomial(f.field, m.reduce((r1, r2)), c)
        return cls(f.field, r1, r2, reduced.terms, q=q)

    def to_polynomial(self):
        return BivariatePolynomial(self.field, self.coefficients)

    def evaluate(self, pair):
        return self.to_polynomial().evaluate(pair)

    @property
    def weight(self):
        return len(self.coefficients)

    def _check(self, other):
        if (self.r1, self.r2) != (other.r1, other.r2):
            raise CodeError(CodeError.BAD_WORD, "size mismatch")

    def __add__(self, other):
        self._check(other)
        return Word.from_polynomial(self.to_polynomial() + other.to_polynomial(), self.r1, self.r2, q=self.q)

    def __sub__(self, other):
        self._check(other)
        return Word.from_polynomial(self.to_polynomial() - other.to_polynomial(), self.r1, self.r2, q=self.q)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return (self.r1, self.r2, self.coefficients) == (other.r1, other.r2, other.coefficients)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def to_rows(self):
        return [
            [self.field.format_element(self.coefficients.get(Point(i, j), self.field.zero))
             for j in range(self.r2)]
            for i in range(self.r1)]

    @classmethod
    def from_rows(cls, field, rows, q=None):
        if not rows or any(len(row) != len(rows[0]) for row in rows):
            raise CodeError(CodeError.BAD_WORD, "rows must form a non-empty rectangle")
        coefficients = {
            Point(i, j): field.parse_element(text)
            for i, row in enumerate(rows) for j, text in enumerate(row)}
        return cls(field, len(rows), len(rows[0]), coefficients, q=q)

    def dumps(self):
        return json.dumps({"rows": self.to_rows()})

    @classmethod
    def loads(cls, text, field, q=None):
        try:
            rows = json.loads(text)["rows"]
        except (ValueError, KeyError, TypeError) as exc:
            raise CodeError(CodeError.BAD_WORD, str(exc))
        return cls.from_rows(field, rows, q=q)

    def __repr__(self):
        return "Word(%s)" % self.to_polynomial()


def _check_capability(t, r1, r2):
    if t < 1 or t > r1 // 2 or t > r2 // 2:
        raise CodeError(CodeError.CAPABILITY_TOO_LARGE, "t=%s for %sx%s" % (t, r1, r2))


def tau_is_valid(code, tau, t):
    tau = point(tau)
    return all((tau + n).reduce(code.period) in code.defining_set for n in s_of_t(t))


def find_tau(code, t):
    """
    First tau, row-major, with tau + S(t) inside the defining set. The
    l- and g-conditions depend on the received syndromes and are checked
    only when decoding.
    """
    _check_capability(t, code.r1, code.r2)
    for tau in grid(code.r1, code.r2):
        if tau_is_valid(code, tau, t):
            return tau
    return None


def bch_capability(gamma, deltas, bs, r1, r2):
    """
    Capability and translate guaranteed by consecutive runs of zeros:
    delta_k - 1 consecutive values b_k, ..., b_k + delta_k - 2 along every
    axis k in gamma.
    """
    gamma = sorted(set(gamma))
    if not gamma or any(k not in (1, 2) for k in gamma):
        raise CodeError(CodeError.BAD_BOUND_PARAMETERS, "gamma=%s" % gamma)
    sizes = {1: r1, 2: r2}
    for k in gamma:
        if not 2 <= deltas[k] <= sizes[k]:
            raise CodeError(CodeError.BAD_BOUND_PARAMETERS, "delta_%s=%s" % (k, deltas[k]))
    half = min(r1 // 2, r2 // 2)
    if len(gamma) == 1:
        k = gamma[0]
        t = min((deltas[k] - 1) // 2, half)
        tau = Point(bs[1], 0) if k == 1 else Point(0, bs[2])
    else:
        t = min(deltas[1] + deltas[2] - 3, half)
        tau = Point(bs[1], bs[2])
    if t < 1:
        raise CodeError(CodeError.DEGENERATE_BOUND, "t=%s" % t)
    return t, tau.reduce((r1, r2))


def bch_code_create(r1, r2, q, gamma, deltas, bs, field=None):
    orbits = []
    for k in sorted(set(gamma)):
        for offset in range(deltas[k] - 1):
            if k == 1:
                orbits.extend(Point(bs[1] + offset, j) for j in range(r2))
            else:
                orbits.extend(Point(i, bs[2] + offset) for i in range(r1))
    return code_create(r1, r2, q, orbits, field=field)


DecodeResult = namedtuple(
    "DecodeResult", ["error", "corrected", "tau", "basis", "delta", "trace", "warnings"])


def decode(code, received, t, order, tau=None, normalize_steps=False):
    order = total_order(order)
    _check_capability(t, code.r1, code.r2)
    if tau is None:
        tau = find_tau(code, t)
        if tau is None:
            raise CodeError(CodeError.NO_TAU, "t=%s" % t)
    elif not tau_is_valid(code, tau, t):
        raise CodeError(CodeError.NO_TAU, "%s + S(%s) leaves the defining set" % (point(tau), t))
    tau = point(tau)
    values = {n: code.syndrome_at(received, tau + n) for n in s_of_t(t)}
    warnings = []
    if not condition_check(values, t, order.condition):
        warnings.append("%s-condition does not hold" % order.condition)
    result = bms.run(values, order, t, code.field, period=code.period, normalize_steps=normalize_steps)
    support = support_from_basis(result.basis, code.alpha_pair, code.period)
    if len(support) > t:
        raise CodeError(CodeError.WEIGHT_EXCEEDS_CAPABILITY, "%s > %s" % (len(support), t))
    error = solve_coefficients(support, values, tau, code.alpha_pair, code.q)
    corrected = received - Word.from_polynomial(error, code.r1, code.r2)
    if not code.is_codeword(corrected):
        raise CodeError(CodeError.NOT_CODEWORD_AFTER_CORRECTION, "error %s" % error)
    logger.debug("decoded error %s with tau %s", error, tau)
    return DecodeResult(error, corrected, tau, result.basis, result.delta, result.trace, warnings)


def random_element(field, size, rng):
    """Uniform element of the subfield with `size` elements."""
    k = rng.randrange(size)
    if k == 0:
        return field.zero
    return field.element((k - 1) * (field.group_order // (size - 1)))


def random_codeword(code, rng):
    """
    Inverse transform of a random spectrum that vanishes on the defining
    set and satisfies C_(q n) = C_n^q, so the word lies in GF(q).
    """
    field = code.field
    spectrum = {}
    for n in grid(code.r1, code.r2):
        if n in spectrum:
            continue
        orbit = [n]
        current = Point((n[0] * code.q) % code.r1, (n[1] * code.q) % code.r2)
        while current != n:
            orbit.append(current)
            current = Point((current[0] * code.q) % code.r1, (current[1] * code.q) % code.r2)
        if n in code.defining_set:
            value = field.zero
        else:
            value = random_element(field, code.q ** len(orbit), rng)
        for i, m in enumerate(orbit):
            spectrum[m] = value ** (code.q ** i)
    scale = field.from_int(code.r1 * code.r2).inverse()
    a1, a2 = code.alpha_pair
    coefficients = {}
    for m in grid(code.r1, code.r2):
        total = field.zero
        for n, value in spectrum.items():
            if value:
                total = total + value * a1 ** (-m[0] * n[0]) * a2 ** (-m[1] * n[1])
        coefficients[m] = total * scale
    return Word(field, code.r1, code.r2, coefficients, q=code.q)


def random_error(code, weight, rng):
    positions = rng.sample(grid(code.r1, code.r2), weight)
    step = code.field.group_order // (code.q - 1)
    terms = {n: code.field.element(rng.randrange(code.q - 1) * step) for n in positions}
    return ErrorPolynomial(code.field, terms, q=code.q)
