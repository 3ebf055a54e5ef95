import logging
import re

from .ff import FieldError
from .order import LEX, Point, point, preceq, total_order

logger = logging.getLogger(__name__)

_VARIABLE_RE = re.compile(r"^X([12])(?:\^(\d+))?$")


class PolynomialError(Exception):
    ZERO_POLYNOMIAL = 1
    BAD_POLYNOMIAL_TEXT = 2

    ERROR_CODES = {
        1: "Operation undefined on the zero polynomial",
        2: "Cannot parse polynomial",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = PolynomialError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s (%s)" % (self.msg, msg)

    def __str__(self):
        return "PolynomialError %s: %s" % (self.code, self.msg)


class BivariatePolynomial(object):
    """
    Sparse polynomial in X1, X2 over a finite field, stored as a map from
    exponent Point to nonzero coefficient. Values are immutable: every
    operation returns a new polynomial.
    """

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {}
        for m, c in (terms or {}).items():
            if c:
                self.terms[point(m)] = c

    @classmethod
    def monomial(cls, field, exponent, coefficient=None):
        return cls(field, {point(exponent): field.one if coefficient is None else coefficient})

    @classmethod
    def one(cls, field):
        return cls.monomial(field, (0, 0))

    @classmethod
    def zero(cls, field):
        return cls(field)

    @property
    def is_zero(self):
        return not self.terms

    def support(self):
        return frozenset(self.terms)

    @property
    def weight(self):
        return len(self.terms)

    def coefficient(self, m):
        return self.terms.get(point(m), self.field.zero)

    def leading_point(self, order=LEX):
        if not self.terms:
            raise PolynomialError(PolynomialError.ZERO_POLYNOMIAL, "leading point")
        return total_order(order).maximum(self.terms)

    def leading_coefficient(self, order=LEX):
        return self.terms[self.leading_point(order)]

    def descending(self, order=LEX):
        """(exponent, coefficient) pairs from the leading term down."""
        return [(m, self.terms[m]) for m in total_order(order).sorted(self.terms, reverse=True)]

    def __add__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return BivariatePolynomial(self.field, terms)

    def __neg__(self):
        return BivariatePolynomial(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return BivariatePolynomial(self.field, {m: c * x for m, x in self.terms.items()})

    def shift(self, t):
        """X^t * f."""
        t = point(t)
        return BivariatePolynomial(self.field, {m + t: c for m, c in self.terms.items()})

    def __mul__(self, other):
        result = BivariatePolynomial(self.field)
        for m, c in other.terms.items():
            result = result + self.shift(m).scale(c)
        return result

    def evaluate(self, pair):
        x1, x2 = pair
        total = self.field.zero
        for m, c in self.terms.items():
            total = total + c * (x1 ** m[0]) * (x2 ** m[1])
        return total

    def format(self, order=LEX):
        if not self.terms:
            return "0"
        return "+".join(_format_term(self.field, m, c) for m, c in self.descending(order))

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "BivariatePolynomial(%s)" % self

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(frozenset((m, c.log) for m, c in self.terms.items()))


def _format_term(field, m, c):
    parts = []
    if c != field.one or m == (0, 0):
        parts.append("1" if c == field.one else field.format_element(c))
    for name, e in (("X1", m[0]), ("X2", m[1])):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%s" % (name, e))
    return "*".join(parts)


def parse_polynomial(field, text):
    """Inverse of BivariatePolynomial.format; like terms are combined."""
    text = re.sub(r"\s+", "", str(text))
    if not text:
        raise PolynomialError(PolynomialError.BAD_POLYNOMIAL_TEXT, "empty")
    result = BivariatePolynomial(field)
    for sign, body in re.findall(r"([+-]?)((?:\^-|[^+-])+)", text):
        coefficient = field.one
        exponent = [0, 0]
        for factor in body.split("*"):
            match = _VARIABLE_RE.match(factor)
            if match:
                exponent[int(match.group(1)) - 1] += int(match.group(2) or 1)
                continue
            try:
                coefficient = coefficient * field.parse_element(factor)
            except FieldError:
                raise PolynomialError(PolynomialError.BAD_POLYNOMIAL_TEXT, text)
        if sign == "-":
            coefficient = -coefficient
        result = result + BivariatePolynomial.monomial(field, exponent, coefficient)
    return result


def leading_point(f, order):
    return f.leading_point(order)


def evaluate(f, pair):
    return f.evaluate(pair)


def shift_add(f, t, g):
    return f.shift(t) + g


class NeedsIndex(object):
    """A recurrence could not be evaluated because u at `index` is unknown."""

    __slots__ = ("index",)

    def __init__(self, index):
        self.index = point(index)

    def __eq__(self, other):
        return isinstance(other, NeedsIndex) and other.index == self.index

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(("NeedsIndex", self.index))

    def __repr__(self):
        return "NeedsIndex(%s)" % (self.index,)


class ArrayView(object):
    period = None

    def lookup(self, n):
        """The value at n, or None when it is not known."""
        raise NotImplementedError

    def is_known(self, n):
        return self.lookup(n) is not None


class PartialView(ArrayView):
    """Values known at finitely many indices, read without reduction."""

    def __init__(self, values, period=None):
        self.values = {point(n): v for n, v in values.items()}
        self.period = period

    def lookup(self, n):
        return self.values.get(point(n))

    def known(self):
        return frozenset(self.values)


def recurrence_value(f, view, n, order):
    """
    f[u]_n = sum of f_m * u_(m+n-s) over supp(f), s = LP(f), when s <= n;
    zero otherwise. Returns NeedsIndex for the first unknown index met.
    """
    s = f.leading_point(order)
    n = point(n)
    if not preceq(s, n):
        return f.field.zero
    total = f.field.zero
    for m, c in f.descending(order):
        index = m + n - s
        value = view.lookup(index)
        if value is None:
            return NeedsIndex(index)
        total = total + c * value
    return total


def monomial(field, n1, n2):
    return BivariatePolynomial.monomial(field, Point(n1, n2))
