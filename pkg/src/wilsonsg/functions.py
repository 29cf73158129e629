"""Complex-valued functions on a finite semigroup.

Values live in the session cyclotomic field of the semigroup.  Functions on a
subset (e.g. the complement of a null ideal) are stored as full-length
vectors together with a boolean mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import linalg
from .scalar import Cyclotomic, CyclotomicField, field
from .semigroup import (
    CayleyTable,
    conductor_for,
    is_involutive_automorphism,
    is_square_generated,
    period_lcm,
)

I_CHI_DEFINITION = "I_chi := chi^-1(0)"


class FunctionSpaceError(ValueError):
    pass


class NotMultiplicative(FunctionSpaceError):
    pass


class BlanketAssumptionViolated(FunctionSpaceError):
    pass


class SFunc:
    """Immutable function S -> Q(zeta_N), optionally restricted by a mask."""

    __slots__ = ("values", "mask", "field")

    def __init__(self, values: Iterable, fld: CyclotomicField | None = None, mask=None):
        vals = list(values)
        if fld is None:
            fld = next((v.field for v in vals if isinstance(v, Cyclotomic)), None)
            if fld is None:
                raise FunctionSpaceError("field required for function without cyclotomic values")
        self.field = fld
        self.values: tuple[Cyclotomic, ...] = tuple(fld.coerce(v) for v in vals)
        self.mask: tuple[bool, ...] | None = None if mask is None else tuple(bool(m) for m in mask)
        if self.mask is not None:
            if len(self.mask) != len(self.values):
                raise FunctionSpaceError("mask length differs from function length")
            if any(v for v, m in zip(self.values, self.mask) if not m):
                raise FunctionSpaceError("masked-out entries must be zero")

    @classmethod
    def zero(cls, fld: CyclotomicField, n: int) -> SFunc:
        return cls([fld.zero] * n, fld)

    @classmethod
    def constant(cls, fld: CyclotomicField, n: int, c) -> SFunc:
        return cls([fld.coerce(c)] * n, fld)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> Cyclotomic:
        return self.values[x]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SFunc):
            return NotImplemented
        return self.values == other.values and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.values, self.mask))

    def __repr__(self) -> str:
        body = ", ".join(str(v) for v in self.values)
        extra = "" if self.mask is None else f", mask={list(map(int, self.mask))}"
        return f"SFunc[{body}]{extra}"

    def is_zero(self) -> bool:
        return not any(self.values)

    def sort_key(self) -> tuple:
        return tuple(v.sort_key() for v in self.values)

    def _mask_with(self, other: SFunc):
        if self.mask is None:
            return other.mask
        if other.mask is None or other.mask == self.mask:
            return self.mask
        raise FunctionSpaceError("functions have different domains")

    def __add__(self, other: SFunc) -> SFunc:
        return SFunc([a + b for a, b in zip(self.values, other.values)], self.field, self._mask_with(other))

    def __sub__(self, other: SFunc) -> SFunc:
        return SFunc([a - b for a, b in zip(self.values, other.values)], self.field, self._mask_with(other))

    def __neg__(self) -> SFunc:
        return SFunc([-a for a in self.values], self.field, self.mask)

    def __mul__(self, other) -> SFunc:
        if isinstance(other, SFunc):
            return SFunc([a * b for a, b in zip(self.values, other.values)], self.field, self._mask_with(other))
        c = self.field.coerce(other)
        return SFunc([c * a for a in self.values], self.field, self.mask)

    __rmul__ = __mul__

    def __truediv__(self, c) -> SFunc:
        inv = self.field.coerce(c).inverse()
        return SFunc([a * inv for a in self.values], self.field, self.mask)

    def unmasked(self) -> SFunc:
        return SFunc(self.values, self.field)

    def to_json(self) -> dict:
        out: dict = {"values": [v.to_json() for v in self.values]}
        if self.mask is not None:
            out["mask"] = [bool(m) for m in self.mask]
        return out


class StructureInstance:
    """A triple (S, sigma, mu) satisfying the blanket assumption.

    ``S`` is generated by its squares, ``sigma`` is an involutive automorphism
    and ``mu`` is multiplicative with ``mu(x sigma(x)) = 1`` (hence nowhere
    zero).
    """

    def __init__(self, S: CayleyTable, sigma: Sequence[int] | None = None, mu: SFunc | None = None,
                 fld: CyclotomicField | None = None, check: bool = True):
        self.S = S
        self.n = S.order
        self.field = fld or (mu.field if mu is not None else field(conductor_for(S)))
        self.sigma: tuple[int, ...] = tuple(range(S.order)) if sigma is None else tuple(sigma)
        self.mu = SFunc.constant(self.field, S.order, 1) if mu is None else mu
        if check:
            self.check()

    def check(self) -> None:
        ok, closure = is_square_generated(self.S)
        if not ok:
            raise BlanketAssumptionViolated(
                f"semigroup is not generated by its squares (closure {sorted(closure)})"
            )
        if len(self.sigma) != self.n or not is_involutive_automorphism(self.S, self.sigma):
            raise BlanketAssumptionViolated(f"sigma={list(self.sigma)} is not an involutive automorphism")
        mu = self.mu
        if mu.field is not self.field or len(mu) != self.n:
            raise BlanketAssumptionViolated("mu has the wrong field or length")
        if not is_multiplicative(mu, self.S):
            raise BlanketAssumptionViolated("mu is not multiplicative")
        t = self.S.table
        for x in self.S.elements:
            if mu[t[x][self.sigma[x]]] != 1:
                raise BlanketAssumptionViolated(f"mu(x sigma(x)) != 1 at x={x}")

    def __repr__(self) -> str:
        return f"StructureInstance(S={self.S!r}, sigma={list(self.sigma)}, mu={self.mu!r})"

    def zero(self) -> SFunc:
        return SFunc.zero(self.field, self.n)

    def constant(self, c) -> SFunc:
        return SFunc.constant(self.field, self.n, c)

    def to_json(self) -> dict:
        return {
            "semigroup": self.S.to_json(),
            "sigma": list(self.sigma),
            "mu": [v.to_json() for v in self.mu],
            "conductor": self.field.n,
        }


def star(F: SFunc, ctx: StructureInstance) -> SFunc:
    """x -> mu(x) F(sigma(x))."""
    mu, s = ctx.mu, ctx.sigma
    mask = None if F.mask is None else tuple(F.mask[s[x]] for x in range(ctx.n))
    return SFunc([mu[x] * F[s[x]] for x in range(ctx.n)], ctx.field, mask)


def even_part(f: SFunc, ctx: StructureInstance) -> SFunc:
    return (f + star(f, ctx)) / 2


def odd_part(f: SFunc, ctx: StructureInstance) -> SFunc:
    return (f - star(f, ctx)) / 2


def _pairs(S: CayleyTable, f: SFunc):
    dom = [x for x in S.elements if f.mask is None or f.mask[x]]
    return [(x, y) for x in dom for y in dom]


def is_multiplicative(f: SFunc, S: CayleyTable) -> bool:
    t = S.table
    return all(f[t[x][y]] == f[x] * f[y] for x, y in _pairs(S, f))


def is_additive(f: SFunc, S: CayleyTable) -> bool:
    t = S.table
    return all(f[t[x][y]] == f[x] + f[y] for x, y in _pairs(S, f))


def is_central(f: SFunc, S: CayleyTable) -> bool:
    t = S.table
    return all(f[t[x][y]] == f[t[y][x]] for x, y in _pairs(S, f))


def multiplicative_exponents(S: CayleyTable, L: int | None = None) -> list[tuple[int | None, ...]]:
    """All multiplicative functions as exponent vectors.

    Entry ``None`` means value 0, entry ``k`` means zeta_L^k, with L the lcm
    of the element periods.  Every value chi(x) satisfies
    chi(x)^i = chi(x)^(i+p), so it is 0 or a p-th root of unity; the search
    over {0} U mu_L is therefore complete.
    """
    if L is None:
        L = period_lcm(S)
    n = S.order
    t = S.table
    val: list[int | None] = [None] * n
    choices: list[int | None] = [None] + list(range(L))
    # pairs to check once element k is assigned: all of x, y, xy <= k, max == k
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            z = t[x][y]
            checks[max(x, y, z)].append((x, y, z))
    out = []

    def rec(k: int):
        if k == n:
            out.append(tuple(val))
            return
        for c in choices:
            val[k] = c
            ok = True
            for x, y, z in checks[k]:
                a, b = val[x], val[y]
                prod = None if a is None or b is None else (a + b) % L
                if prod != val[z]:
                    ok = False
                    break
            if ok:
                rec(k + 1)
        val[k] = None

    rec(0)
    return out


def exponents_to_sfunc(exps, fld: CyclotomicField, L: int) -> SFunc:
    return SFunc([fld.zero if e is None else fld.root_of_unity(L, e) for e in exps], fld)


def enumerate_multiplicative(S: CayleyTable, fld: CyclotomicField | None = None) -> list[SFunc]:
    """All multiplicative S -> C, the zero function included."""
    L = period_lcm(S)
    fld = fld or field(conductor_for(S))
    return [exponents_to_sfunc(e, fld, L) for e in multiplicative_exponents(S, L)]


def enumerate_mu(S: CayleyTable, sigma: Sequence[int], fld: CyclotomicField | None = None) -> list[SFunc]:
    """Multiplicative, nowhere-zero mu with mu(x sigma(x)) = 1."""
    L = period_lcm(S)
    fld = fld or field(conductor_for(S))
    t = S.table
    out = []
    for e in multiplicative_exponents(S, L):
        if any(v is None for v in e):
            continue
        if all(e[t[x][sigma[x]]] == 0 for x in S.elements):
            out.append(exponents_to_sfunc(e, fld, L))
    return out


def additive_space(S: CayleyTable, subset: Iterable[int] | None = None, fld: CyclotomicField | None = None,
                   odd_under: Sequence[int] | None = None) -> list[SFunc]:
    """Basis of additive functions on a subsemigroup, as masked functions.

    With ``odd_under=sigma`` only solutions with A o sigma = -A are kept
    (sigma must map the subset onto itself).
    """
    fld = fld or field(1)
    n = S.order
    members = sorted(set(S.elements) if subset is None else set(subset))
    t = S.table
    mset = set(members)
    for x in members:
        for y in members:
            if t[x][y] not in mset:
                raise FunctionSpaceError("subset is not closed under the composition")
    idx = {x: i for i, x in enumerate(members)}
    m = len(members)
    zero, one = fld.zero, fld.one
    rows = []
    for x in members:
        for y in members:
            row = [zero] * m
            row[idx[t[x][y]]] += one
            row[idx[x]] -= one
            row[idx[y]] -= one
            rows.append(row)
    if odd_under is not None:
        for x in members:
            sx = odd_under[x]
            if sx not in mset:
                raise FunctionSpaceError("sigma does not preserve the subset")
            row = [zero] * m
            row[idx[x]] += one
            row[idx[sx]] += one
            rows.append(row)
    mask = [x in mset for x in range(n)]
    basis = []
    for v in linalg.nullspace(rows, m, one):
        full = [zero] * n
        for x in members:
            full[x] = v[idx[x]]
        basis.append(SFunc(full, fld, mask))
    return basis


@dataclass(frozen=True)
class NullIdeal:
    members: frozenset[int]

    def complement(self, n: int) -> frozenset[int]:
        return frozenset(range(n)) - self.members


def null_ideal(chi: SFunc, S: CayleyTable) -> NullIdeal:
    """{x : chi(x) = 0} for a multiplicative chi, with the ideal laws checked."""
    if not is_multiplicative(chi, S):
        raise NotMultiplicative("null_ideal needs a multiplicative function")
    members = frozenset(x for x in S.elements if chi[x].is_zero())
    t = S.table
    rest = set(S.elements) - members
    for x in S.elements:
        for y in members:
            assert t[x][y] in members and t[y][x] in members, "I_chi is not an ideal"
    for x in rest:
        for y in rest:
            assert t[x][y] in rest, "complement of I_chi is not closed"
    return NullIdeal(members)


def restrict_mask(I: NullIdeal, n: int) -> tuple[bool, ...]:
    return tuple(x not in I.members for x in range(n))
