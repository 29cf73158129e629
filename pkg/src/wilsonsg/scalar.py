"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored as an integer coefficient vector over a common positive
denominator, in the power basis 1, z, ..., z^(phi(n)-1) reduced modulo the
n-th cyclotomic polynomial.  The public ``coeffs`` view exposes them as
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational


class ScalarError(ArithmeticError):
    pass


class ConductorMismatch(ScalarError):
    pass


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficients lowest degree first; den is monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dn]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[:dn]):
        raise ValueError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class CyclotomicField:
    """The field Q(zeta_n); one instance per conductor (see :func:`field`)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        deg = self.degree
        # powers[k] = z^k reduced, for 0 <= k < max(n, 2*deg)
        top = max(n, 2 * deg)
        powers: list[tuple[int, ...]] = []
        cur = [1] + [0] * (deg - 1)
        for _ in range(top):
            powers.append(tuple(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for j in range(deg):
                    cur[j] -= lead * self.modulus[j]
        self._powers = powers
        self.units = [k for k in range(1, n) if gcd(k, n) == 1] or [1]
        self._inverse_cache: dict[tuple, Cyclotomic] = {}
        self._zero_tail = (0,) * (deg - 1)
        self.zero = self._make_raw((0,) * deg, 1)
        self.one = self.from_rational(1)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (field, (self.n,))

    def _make_raw(self, num: tuple[int, ...], den: int) -> Cyclotomic:
        obj = object.__new__(Cyclotomic)
        obj.field = self
        obj.num = num
        obj.den = den
        return obj

    def _make(self, num, den: int) -> Cyclotomic:
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = gcd(den, *num)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        return self._make_raw(tuple(num), den)

    def from_rational(self, q) -> Cyclotomic:
        if type(q) is int:
            return self._make_raw((q,) + self._zero_tail, 1)
        q = Fraction(q)
        return self._make_raw((q.numerator,) + self._zero_tail, q.denominator)

    def from_coeffs(self, coeffs) -> Cyclotomic:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return self._make([int(c * den) for c in coeffs], den)

    def z_power(self, k: int) -> Cyclotomic:
        return self._make_raw(self._powers[k % self.n], 1)

    def root_of_unity(self, n: int, k: int) -> Cyclotomic:
        """zeta_n^k expressed in this field."""
        if n < 1:
            raise ValueError("order must be positive")
        if self.n % n:
            raise ConductorMismatch(f"{n} does not divide conductor {self.n}")
        return self.z_power((k % n) * (self.n // n))

    def galois(self, a: Cyclotomic, k: int) -> Cyclotomic:
        """Apply the automorphism z -> z^k (k coprime to the conductor)."""
        if gcd(k, self.n) != 1:
            raise ValueError("k must be a unit modulo the conductor")
        res = [0] * self.degree
        for i, c in enumerate(a.num):
            if c:
                r = self._powers[(i * k) % self.n]
                for t in range(self.degree):
                    res[t] += c * r[t]
        return self._make(res, a.den)

    def coerce(self, x) -> Cyclotomic:
        if isinstance(x, Cyclotomic):
            if x.field is not self:
                raise ConductorMismatch(f"conductor {x.field.n} != {self.n}")
            return x
        if isinstance(x, (int, Rational)):
            return self.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def embed(self, x: Cyclotomic) -> Cyclotomic:
        """Map an element of Q(zeta_m), m | n, into this field."""
        m = x.field.n
        if self.n % m:
            raise ConductorMismatch(f"{m} does not divide conductor {self.n}")
        step = self.n // m
        res = [0] * self.degree
        for i, c in enumerate(x.num):
            if c:
                r = self._powers[i * step]
                for t in range(self.degree):
                    res[t] += c * r[t]
        return self._make(res, x.den)

    def from_json(self, obj: dict) -> Cyclotomic:
        x = scalar_from_json(obj)
        return self.embed(x)


@lru_cache(maxsize=None)
def field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


class Cyclotomic:
    """Immutable element of a :class:`CyclotomicField`."""

    __slots__ = ("field", "num", "den")

    field: CyclotomicField
    num: tuple[int, ...]
    den: int

    def __init__(self, fld: CyclotomicField, coeffs):
        x = fld.from_coeffs(coeffs)
        self.field, self.num, self.den = fld, x.num, x.den

    def __reduce__(self):
        return (_rebuild, (self.field.n, self.num, self.den))

    @property
    def conductor(self) -> int:
        return self.field.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        num = self.num
        if not any(num[1:]):
            # agree with hash() of the equal int / Fraction
            return hash(num[0]) if self.den == 1 else hash(Fraction(num[0], self.den))
        return hash((num, self.den))

    def sort_key(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def _other(self, other) -> Cyclotomic | None:
        if type(other) is Cyclotomic:
            if other.field is not self.field:
                raise ConductorMismatch(f"conductor {other.field.n} != {self.field.n}")
            return other
        if type(other) is int:
            return self.field._make_raw((other,) + self.field._zero_tail, 1)
        if isinstance(other, (int, Rational)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den == 1:
                return self.field._make_raw(tuple([a + b for a, b in zip(self.num, o.num)]), 1)
            return self.field._make([a + b for a, b in zip(self.num, o.num)], self.den)
        d1, d2 = self.den, o.den
        return self.field._make([a * d2 + b * d1 for a, b in zip(self.num, o.num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return self.field._make_raw(tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == 1 and o.den == 1:
            return self.field._make_raw(tuple([a - b for a, b in zip(self.num, o.num)]), 1)
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        deg = self.field.degree
        if not any(a[1:]):
            c = a[0]
            if not c:
                return self.field.zero
            if self.den == 1 and o.den == 1:
                return self.field._make_raw(tuple([c * x for x in b]), 1)
            return self.field._make([c * x for x in b], self.den * o.den)
        if not any(b[1:]):
            c = b[0]
            if not c:
                return self.field.zero
            if self.den == 1 and o.den == 1:
                return self.field._make_raw(tuple([c * x for x in a]), 1)
            return self.field._make([c * x for x in a], self.den * o.den)
        conv = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        res = conv[:deg]
        powers = self.field._powers
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                r = powers[k]
                for t in range(deg):
                    res[t] += c * r[t]
        return self.field._make(res, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        fld = self.field
        key = (self.num, self.den)
        hit = fld._inverse_cache.get(key)
        if hit is not None:
            return hit
        if self.is_rational():
            inv = fld.from_rational(Fraction(self.den, self.num[0]))
        else:
            # a^-1 = (prod of the other Galois conjugates) / norm(a)
            rest = fld.one
            for k in fld.units:
                if k != 1:
                    rest = rest * fld.galois(self, k)
            norm = self * rest
            assert norm.is_rational()
            inv = rest * Fraction(norm.den, norm.num[0])
        if len(fld._inverse_cache) < 100_000:
            fld._inverse_cache[key] = inv
        return inv

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> Cyclotomic:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> Cyclotomic:
        return self.field.galois(self, self.field.n - 1)

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.field.n)
        return sum(c * z**i for i, c in enumerate(self.num)) / self.den

    def to_json(self) -> dict:
        return {
            "conductor": self.field.n,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    def __repr__(self) -> str:
        return f"Cyclotomic({self.field.n}, {self})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _rebuild(n: int, num: tuple[int, ...], den: int) -> Cyclotomic:
    return field(n)._make_raw(num, den)


def root_of_unity(fld: CyclotomicField, n: int, k: int) -> Cyclotomic:
    return fld.root_of_unity(n, k)


def complex_conjugate(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def scalar_from_json(obj) -> Cyclotomic:
    """Parse ``{"conductor": n, "coeffs": [["num", "den"], ...]}``.

    Bare integers and ``"p/q"`` strings are accepted as rationals in Q(zeta_1).
    """
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, (int, str)):
        return field(1).from_rational(Fraction(obj))
    if not isinstance(obj, dict) or "conductor" not in obj or "coeffs" not in obj:
        raise ValueError(f"malformed scalar: {obj!r}")
    n = int(obj["conductor"])
    fld = field(n)
    coeffs = []
    for c in obj["coeffs"]:
        if isinstance(c, (list, tuple)) and len(c) == 2:
            coeffs.append(Fraction(int(c[0]), int(c[1])))
        else:
            coeffs.append(Fraction(c))
    return fld.from_coeffs(coeffs)
