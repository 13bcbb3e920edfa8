"""Exact scalar fields: the rationals and prime fields GF(p), p > 3."""

from fractions import Fraction
import re


class FieldError(ValueError):
    pass


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class Field:
    """Base class: a field whose elements support +, -, *, / and ==."""

    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text):
        """Parse ``p`` or ``p/q``; a zero denominator raises ZeroDivisionError."""
        m = _RATIONAL.match(text)
        if m is None:
            raise FieldError("not a rational literal: %r" % text)
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError("zero denominator in %r" % text)
        return self(num) / self(den)

    def format(self, x):
        return str(x)

    def __repr__(self):
        return "Field(%s)" % self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class Rationals(Field):
    name = "q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)


class ModP:
    """An element of GF(p); the prime lives on the (per-field) subclass."""

    __slots__ = ("v",)
    p = 0

    def __init__(self, v):
        self.v = v % self.p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldError("mixing GF(%d) and GF(%d)" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else type(self)(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else type(self)(self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else type(self)(o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else type(self)(self.v * o)

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.v)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return type(self)(self.v * pow(o, -1, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(o) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v

    __str__ = __repr__


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PrimeField(Field):
    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError("%d is not prime" % p)
        if p <= 3:
            raise FieldError("GF(p) requires p > 3")
        self.p = p
        self.name = "gf:%d" % p
        self.elt = type("GF%d" % p, (ModP,), {"__slots__": (), "p": p})

    def __call__(self, x):
        if isinstance(x, self.elt):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.elt(x.numerator) / self.elt(x.denominator)
        return self.elt(int(x))


QQ = Rationals()
_prime_fields = {}


def GF(p):
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_from_tag(tag):
    """``q`` for the rationals, ``gf:p`` for GF(p)."""
    tag = tag.strip().lower()
    if tag in ("q", "qq"):
        return QQ
    if tag.startswith("gf:"):
        try:
            p = int(tag[3:])
        except ValueError:
            raise FieldError("bad field tag %r" % tag) from None
        return GF(p)
    raise FieldError("bad field tag %r" % tag)
