"""Exact coefficient fields: arbitrary-precision rationals and odd prime fields.

Scalars are plain Python values in canonical form -- ``fractions.Fraction``
over the rationals (always reduced, positive denominator) and ``int``
residues in ``[0, p)`` over F_p -- so hot loops stay object-light.  All
arithmetic goes through a :class:`FieldSpec`, which owns the dispatch.

Characteristic 2 is rejected outright: the normal-line constructions divide
by 2 when polarizing quadratic forms, and none of the supported geometry is
defined there.
"""

from fractions import Fraction

from .errors import FieldError

RATIONALS = "Q"
PRIME = "Fp"

# Largest modulus accepted: must fit a machine word.
MAX_MODULUS = (1 << 63) - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid for every n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """One coefficient field: the rationals or F_p for an odd prime p.

    Immutable; all scalar operations are pure functions of their inputs, so
    instances are safe to share across threads.
    """

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind == RATIONALS:
            if p is not None:
                raise FieldError("rationals take no modulus")
        elif kind == PRIME:
            if not isinstance(p, int) or p < 2:
                raise FieldError(f"modulus must be an integer >= 2, got {p!r}")
            if p == 2:
                raise FieldError("characteristic 2 is not supported")
            if p > MAX_MODULUS:
                raise FieldError(f"modulus {p} exceeds a machine word")
            if not is_prime(p):
                raise FieldError(f"modulus {p} is not prime")
        else:
            raise FieldError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("FieldSpec is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Q" if self.kind == RATIONALS else f"F_{self.p}"

    @property
    def char(self):
        return 0 if self.kind == RATIONALS else self.p

    # -- construction of scalars ------------------------------------------

    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def coerce(self, value):
        """Map an int or Fraction into the field, canonical form."""
        if self.kind == RATIONALS:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise FieldError(f"cannot coerce {value!r} into Q")
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return value.numerator % self.p
            return self.div(value.numerator % self.p, value.denominator % self.p)
        if isinstance(value, int):
            return value % self.p
        raise FieldError(f"cannot coerce {value!r} into F_{self.p}")

    def is_element(self, value):
        if self.kind == RATIONALS:
            return isinstance(value, Fraction)
        return isinstance(value, int) and 0 <= value < self.p

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        return a + b if self.kind == RATIONALS else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == RATIONALS else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == RATIONALS else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == RATIONALS else (-a) % self.p

    def inv(self, a):
        if not a:
            raise FieldError("division by zero")
        if self.kind == RATIONALS:
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        if not b:
            raise FieldError("division by zero")
        if self.kind == RATIONALS:
            return a / b
        return a * pow(b, -1, self.p) % self.p

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.kind == RATIONALS:
            return a**e
        return pow(a, e, self.p)

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    # -- sampling and formatting -------------------------------------------

    def sample_uniform(self, rng, bound=10):
        """Draw a scalar deterministically from a seeded ``random.Random``.

        Over F_p the draw is uniform on residues.  Over Q, numerators are
        drawn in [-bound, bound] and denominators in [1, bound].
        """
        if self.kind == PRIME:
            return rng.randrange(self.p)
        if bound < 1:
            raise FieldError("bound must be >= 1 for rational sampling")
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def sample_nonzero(self, rng, bound=10):
        while True:
            v = self.sample_uniform(rng, bound)
            if v:
                return v

    def format_scalar(self, a):
        if self.kind == PRIME:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse_scalar(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))


_Q = FieldSpec(RATIONALS)
_PRIME_CACHE = {}


def rationals():
    return _Q


def prime_field(p):
    spec = _PRIME_CACHE.get(p)
    if spec is None:
        spec = _PRIME_CACHE.setdefault(p, FieldSpec(PRIME, p))
    return spec


def field_of_char(char):
    """char 0 -> Q, odd prime p -> F_p."""
    return rationals() if char == 0 else prime_field(char)
