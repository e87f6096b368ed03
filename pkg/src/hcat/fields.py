"""Exact coefficient fields: the rationals and prime fields.

Every computation in the package runs over one of these two fields; there is
no floating point anywhere.  Rational elements are `fractions.Fraction`
(always reduced, positive denominator), prime-field elements are plain ints
in [0, p).
"""

from __future__ import annotations

from fractions import Fraction


class FieldMismatchError(ValueError):
    """Raised when values from different ambient fields are combined."""


class FieldError(ValueError):
    """Raised for invalid field construction or element parsing."""


class RationalField:
    """The field of rational numbers with arbitrary-precision arithmetic."""

    char = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot coerce {x!r} into QQ")

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {text!r}: {exc}") from None

    def format(self, x: Fraction) -> str:
        return str(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p of residues modulo a prime p < 2**31."""

    def __init__(self, p: int):
        if not (isinstance(p, int) and _is_prime(p)):
            raise FieldError(f"modulus {p!r} is not prime")
        if p >= 2**31:
            raise FieldError(f"modulus {p} too large (need p < 2**31)")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def coerce(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator of {x} not invertible mod {self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot coerce {x!r} into GF({self.p})")

    def parse(self, text: str) -> int:
        text = text.strip()
        try:
            if "/" in text:
                return self.coerce(Fraction(text))
            return int(text) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad GF({self.p}) literal {text!r}: {exc}") from None

    def format(self, x: int) -> str:
        return str(x % self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p


QQ = RationalField()


def field_from_name(name: str):
    """Parse a field tag: ``q`` for the rationals, ``f<p>`` for F_p."""
    name = name.strip().lower()
    if name in ("q", "qq", "rational", "rationals"):
        return QQ
    if name.startswith("f") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise FieldError(f"unknown field tag {name!r} (expected 'q' or 'f<p>')")


def field_name(field) -> str:
    if field.char == 0:
        return "q"
    return f"f{field.char}"


def check_same_field(*fields):
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatchError(f"mixed ambient fields: {first!r} vs {f!r}")
    return first
