import logging
import re

logger = logging.getLogger(__name__)

MAX_FIELD_ORDER = 2 ** 20

_ELEMENT_RE = re.compile(r"^a\^(-?\d+)$")


class FieldError(Exception):
    NOT_PRIMITIVE = 1
    NOT_IRREDUCIBLE = 2
    DIVISION_BY_ZERO = 3
    ORDER_NOT_DIVIDING = 4
    BAD_SUBFIELD = 5
    FIELD_TOO_LARGE = 6
    BAD_ELEMENT_TEXT = 7
    FIELD_MISMATCH = 8
    BAD_FIELD_SPEC = 9

    ERROR_CODES = {
        1: "Polynomial is not primitive",
        2: "Polynomial is not irreducible",
        3: "Division by zero",
        4: "Order does not divide the multiplicative group order",
        5: "Not a subfield size",
        6: "Field too large",
        7: "Cannot parse field element",
        8: "Elements belong to different fields",
        9: "Invalid field specification",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = FieldError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s (%s)" % (self.msg, msg)

    def __str__(self):
        return "FieldError %s: %s" % (self.code, self.msg)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field(object):
    """
    GF(p^m) built from a primitive polynomial.

    Elements are kept in discrete-log form with respect to the root a of
    the polynomial; addition goes through the vector representation
    cached in the antilog table. Vectors are encoded as integers whose
    base-p digits are the coefficients of 1, x, ..., x^(m-1).
    """

    def __init__(self, p, m, primitive_poly, max_order=MAX_FIELD_ORDER):
        poly = [int(c) for c in primitive_poly]
        if not _is_prime(p) or m < 1:
            raise FieldError(FieldError.BAD_FIELD_SPEC, "p=%s, m=%s" % (p, m))
        if len(poly) != m + 1 or poly[m] != 1:
            raise FieldError(FieldError.BAD_FIELD_SPEC, "polynomial must be monic of degree %s" % m)
        if any(c < 0 or c >= p for c in poly):
            raise FieldError(FieldError.BAD_FIELD_SPEC, "coefficients must lie in Z_%s" % p)
        if p ** m > max_order:
            raise FieldError(FieldError.FIELD_TOO_LARGE, "%s^%s > %s" % (p, m, max_order))
        self.p = p
        self.m = m
        self.primitive_poly = tuple(poly)
        self.order = p ** m
        self.group_order = self.order - 1
        self._antilog = []
        self._log = {}
        self._build_tables()
        self.zero = FieldElement(self, None)
        self.one = FieldElement(self, 0)
        self.a = FieldElement(self, 1)
        logger.debug("built GF(%s^%s) from %s", p, m, self.primitive_poly)

    @classmethod
    def from_config(cls, cfg, max_order=MAX_FIELD_ORDER):
        try:
            return cls(int(cfg["p"]), int(cfg["m"]), cfg["poly"], max_order=max_order)
        except (KeyError, TypeError, ValueError) as exc:
            raise FieldError(FieldError.BAD_FIELD_SPEC, str(exc))

    def to_config(self):
        return {"p": self.p, "m": self.m, "poly": list(self.primitive_poly)}

    def _digits(self, code):
        digits = []
        for _ in range(self.m):
            code, d = divmod(code, self.p)
            digits.append(d)
        return digits

    def _encode(self, digits):
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _times_x(self, digits):
        top = digits[-1]
        shifted = [0] + digits[:-1]
        if top:
            # x^m = -(c0 + c1 x + ... + c_{m-1} x^{m-1})
            shifted = [(s - top * c) % self.p for s, c in zip(shifted, self.primitive_poly)]
        return shifted

    def _build_tables(self):
        if self.primitive_poly[0] == 0:
            if self.m > 1:
                raise FieldError(FieldError.NOT_IRREDUCIBLE, "x divides the polynomial")
            raise FieldError(FieldError.NOT_PRIMITIVE, "root is zero")
        digits = [1] + [0] * (self.m - 1)
        for k in range(self.group_order):
            code = self._encode(digits)
            if code in self._log:
                raise FieldError(
                    FieldError.NOT_PRIMITIVE, "a^%s = a^%s" % (k, self._log[code]))
            self._log[code] = k
            self._antilog.append(code)
            digits = self._times_x(digits)
            if not any(digits):
                raise FieldError(FieldError.NOT_IRREDUCIBLE, "reduction reached zero")
        if self._encode(digits) != 1:
            raise FieldError(FieldError.NOT_PRIMITIVE, "a^%s != 1" % self.group_order)

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m, self.primitive_poly) == (
            other.p, other.m, other.primitive_poly)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.p, self.m, self.primitive_poly))

    def __repr__(self):
        return "Field(GF(%s^%s))" % (self.p, self.m)

    def element(self, k):
        return FieldElement(self, k)

    def from_int(self, c):
        """Image of the integer c in the prime subfield."""
        c %= self.p
        if c == 0:
            return self.zero
        return FieldElement(self, self._log[c])

    def elements(self):
        yield self.zero
        for k in range(self.group_order):
            yield FieldElement(self, k)

    def add_logs(self, x, y):
        if x is None:
            return y
        if y is None:
            return x
        u, v = self._antilog[x], self._antilog[y]
        if self.p == 2:
            code = u ^ v
        else:
            code = self._encode([(s + t) % self.p for s, t in zip(self._digits(u), self._digits(v))])
        return self._log.get(code)

    def negate_log(self, x):
        if x is None or self.p == 2:
            return x
        return (x + self.group_order // 2) % self.group_order

    def root_of_unity(self, r):
        if r < 1 or self.group_order % r:
            raise FieldError(FieldError.ORDER_NOT_DIVIDING, "%s does not divide %s" % (r, self.group_order))
        return FieldElement(self, self.group_order // r)

    def multiplicative_order(self, x):
        if x.is_zero:
            raise FieldError(FieldError.DIVISION_BY_ZERO, "zero has no multiplicative order")
        order = 1
        y = x
        while not y == self.one:
            y = y * x
            order += 1
        return order

    def subfield_degree(self, q):
        d, size = 0, 1
        while size < q:
            size *= self.p
            d += 1
        if size != q or d == 0 or self.m % d:
            raise FieldError(FieldError.BAD_SUBFIELD, "%s is not p^d with d | %s" % (q, self.m))
        return d

    def in_base_field(self, x, q):
        self.subfield_degree(q)
        if x.is_zero:
            return True
        return (x.log * (q - 1)) % self.group_order == 0

    def format_element(self, x):
        if x.is_zero:
            return "0"
        return "a^%s" % x.log

    def parse_element(self, text):
        text = str(text).strip()
        if text == "0":
            return self.zero
        if text == "1":
            return self.one
        if text == "a":
            return self.a
        match = _ELEMENT_RE.match(text)
        if not match:
            raise FieldError(FieldError.BAD_ELEMENT_TEXT, text)
        return FieldElement(self, int(match.group(1)))


class FieldElement(object):
    """Either zero (log None) or a^log."""

    __slots__ = ("field", "log")

    def __init__(self, field, log):
        self.field = field
        self.log = None if log is None else log % field.group_order

    @property
    def is_zero(self):
        return self.log is None

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise FieldError(FieldError.FIELD_MISMATCH)
        return other

    def __bool__(self):
        return self.log is not None

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.log == other.log and (other.field is self.field or other.field == self.field)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.log)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add_logs(self.log, other.log))

    def __neg__(self):
        return FieldElement(self.field, self.field.negate_log(self.log))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return self.field.zero
        return FieldElement(self.field, self.log + other.log)

    def inverse(self):
        if self.is_zero:
            raise FieldError(FieldError.DIVISION_BY_ZERO)
        return FieldElement(self.field, -self.log)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n):
        if self.is_zero:
            if n < 0:
                raise FieldError(FieldError.DIVISION_BY_ZERO)
            return self.field.one if n == 0 else self.field.zero
        return FieldElement(self.field, self.log * n)

    def __str__(self):
        return self.field.format_element(self)

    def __repr__(self):
        return "FieldElement(%s)" % self


def field_create(p, m, primitive_poly, max_order=MAX_FIELD_ORDER):
    return Field(p, m, primitive_poly, max_order=max_order)


def element_arith(op, *operands):
    if op == "add":
        x, y = operands
        return x + y
    if op == "mul":
        x, y = operands
        return x * y
    if op == "inv":
        (x,) = operands
        return x.inverse()
    if op == "pow":
        x, n = operands
        return x ** n
    raise ValueError("unknown operation %r" % op)


def root_of_unity(field, r):
    return field.root_of_unity(r)


def in_base_field(x, q):
    return x.field.in_base_field(x, q)


def format_element(x):
    return x.field.format_element(x)


def parse_element(field, text):
    return field.parse_element(text)


# primitive polynomials, coefficients listed from the constant term up
PRIMITIVE_POLYNOMIALS = {
    (2, 1): [1, 1],
    (2, 2): [1, 1, 1],
    (2, 3): [1, 1, 0, 1],
    (2, 4): [1, 1, 0, 0, 1],
    (2, 5): [1, 0, 1, 0, 0, 1],
    (2, 6): [1, 1, 0, 0, 0, 0, 1],
    (2, 7): [1, 1, 0, 0, 0, 0, 0, 1],
    (2, 8): [1, 0, 1, 1, 1, 0, 0, 0, 1],
    (2, 9): [1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    (2, 10): [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    (2, 11): [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    (2, 12): [1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1],
    (3, 1): [1, 1],
    (3, 2): [2, 2, 1],
    (3, 3): [1, 2, 0, 1],
    (3, 4): [2, 0, 0, 2, 1],
}


def default_field(p, m, max_order=MAX_FIELD_ORDER):
    try:
        poly = PRIMITIVE_POLYNOMIALS[(p, m)]
    except KeyError:
        raise FieldError(FieldError.BAD_FIELD_SPEC, "no stored primitive polynomial for GF(%s^%s)" % (p, m))
    return Field(p, m, poly, max_order=max_order)


def smallest_field_for(q, periods, max_order=MAX_FIELD_ORDER):
    """Smallest GF(p^m) containing GF(q) and primitive roots of unity of every period."""
    for (p, m) in sorted(PRIMITIVE_POLYNOMIALS, key=lambda key: key[0] ** key[1]):
        size = p ** m
        if size > max_order or not _is_power_of(q, p) or q == 1 or m % _log(q, p):
            continue
        if all((size - 1) % r == 0 for r in periods):
            return default_field(p, m, max_order=max_order)
    raise FieldError(FieldError.BAD_FIELD_SPEC, "no stored field for q=%s and periods %s" % (q, tuple(periods)))


def _is_power_of(q, p):
    while q > 1 and q % p == 0:
        q //= p
    return q == 1


def _log(q, p):
    d = 0
    while q > 1:
        q //= p
        d += 1
    return d
