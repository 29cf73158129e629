"""Residuals, solution-family constructors and classifiers for

    (EQ1)  f(xy) + mu(y) f(sigma(y) x) = 2 f(x) g(y)
    (EQ2)  f(xy) + mu(y) f(sigma(y) x) = 2 f(y) g(x)
    (DA)   g(xy) + mu(y) g(sigma(y) x) = 2 g(x) g(y)
    (MU)   g(xy) + mu(y) g(x sigma(y)) = 2 g(x) g(y)

on a finite semigroup S generated by its squares.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .functions import (
    I_CHI_DEFINITION,
    SFunc,
    StructureInstance,
    additive_space,
    enumerate_multiplicative,
    is_additive,
    is_multiplicative,
    null_ideal,
    restrict_mask,
    star,
)
from .scalar import Cyclotomic

EQ1, EQ2, DALEMBERT = "eq1", "eq2", "dalembert"


class FamilyPreconditionError(ValueError):
    """A family constructor's hypothesis fails; ``kind`` names which one."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ResidualReport:
    max_violations: int
    witness: tuple[int, int, Cyclotomic] | None

    @property
    def is_zero(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            x, y, r = self.witness
            w = {"x": x, "y": y, "residual": r.to_json()}
        return {"violations": self.max_violations, "witness": w}


def _report(residuals) -> ResidualReport:
    count, witness = 0, None
    for x, y, r in residuals:
        if r:
            count += 1
            if witness is None:
                witness = (x, y, r)
    return ResidualReport(count, witness)


def _residuals(f: SFunc, g: SFunc, ctx: StructureInstance, rhs_swap: bool, mu_right: bool = False):
    t, s, mu = ctx.S.table, ctx.sigma, ctx.mu
    n = ctx.n
    for x in range(n):
        for y in range(n):
            other = t[x][s[y]] if mu_right else t[s[y]][x]
            lhs = f[t[x][y]] + mu[y] * f[other]
            rhs = f[y] * g[x] if rhs_swap else f[x] * g[y]
            yield x, y, lhs - 2 * rhs


def residual_eq1(f: SFunc, g: SFunc, ctx: StructureInstance) -> ResidualReport:
    return _report(_residuals(f, g, ctx, rhs_swap=False))


def residual_eq2(f: SFunc, g: SFunc, ctx: StructureInstance) -> ResidualReport:
    return _report(_residuals(f, g, ctx, rhs_swap=True))


def residual_dalembert_variant(g: SFunc, ctx: StructureInstance) -> ResidualReport:
    return _report(_residuals(g, g, ctx, rhs_swap=False))


def residual_mu_dalembert(g: SFunc, ctx: StructureInstance) -> ResidualReport:
    """g(xy) + mu(y) g(x sigma(y)) - 2 g(x) g(y)."""
    return _report(_residuals(g, g, ctx, rhs_swap=False, mu_right=True))


def residual(equation: str, f: SFunc, g: SFunc, ctx: StructureInstance) -> ResidualReport:
    if equation == EQ1:
        return residual_eq1(f, g, ctx)
    if equation == EQ2:
        return residual_eq2(f, g, ctx)
    if equation == DALEMBERT:
        return residual_dalembert_variant(g, ctx)
    raise ValueError(f"unknown equation {equation!r}")


def _require_multiplicative(chi: SFunc, ctx: StructureInstance, name: str = "chi") -> None:
    if not is_multiplicative(chi, ctx.S):
        raise FamilyPreconditionError("not_multiplicative", f"{name} is not multiplicative")


def make_dalembert(m: SFunc, ctx: StructureInstance) -> SFunc:
    """g = (m + m*)/2, a solution of the d'Alembert variant for multiplicative m."""
    _require_multiplicative(m, ctx, "m")
    return (m + star(m, ctx)) / 2


def make_family2(chi: SFunc, lam, delta, ctx: StructureInstance) -> tuple[SFunc, SFunc]:
    _require_multiplicative(chi, ctx)
    if chi.is_zero():
        raise FamilyPreconditionError("chi_zero", "chi must be nonzero")
    lam, delta = ctx.field.coerce(lam), ctx.field.coerce(delta)
    if not lam and not delta:
        raise FamilyPreconditionError("params_zero", "(lambda, delta) must differ from (0, 0)")
    cs = star(chi, ctx)
    return chi * lam + cs * delta, (chi + cs) / 2


def make_eq2_family2(chi: SFunc, alpha, ctx: StructureInstance) -> tuple[SFunc, SFunc]:
    _require_multiplicative(chi, ctx)
    alpha = ctx.field.coerce(alpha)
    if not alpha:
        raise FamilyPreconditionError("alpha_zero", "alpha must be nonzero")
    g = (chi + star(chi, ctx)) / 2
    return g * alpha, g


def make_family3(chi, c, A, ctx):
    """f = chi (c + A) off I_chi and 0 on it, g = chi.

    ``ctx`` may also be a :class:`~wilsonsg.qspace.QVecSemigroup`, in which
    case chi, A are exponent/linear forms and the result is symbolic.
    """
    from . import qspace

    if isinstance(ctx, qspace.QVecSemigroup):
        return qspace.make_family3(chi, c, A, ctx)
    _require_multiplicative(chi, ctx)
    if chi.is_zero():
        raise FamilyPreconditionError("chi_zero", "chi must be nonzero")
    if star(chi, ctx) != chi:
        raise FamilyPreconditionError("chi_not_even", "chi != chi*")
    I = null_ideal(chi, ctx.S)
    mask = restrict_mask(I, ctx.n)
    A = SFunc(A.values, ctx.field, mask) if A.mask is None else A
    if A.mask != mask:
        raise FamilyPreconditionError("A_domain", "A must be defined exactly on S \\ I_chi")
    if A.is_zero():
        raise FamilyPreconditionError("A_zero", "A must be a nonzero additive function")
    if not is_additive(A, ctx.S):
        raise FamilyPreconditionError("A_not_additive", "A is not additive on S \\ I_chi")
    if any(A[ctx.sigma[x]] != -A[x] for x in range(ctx.n) if mask[x]):
        raise FamilyPreconditionError("A_not_odd", "A o sigma != -A")
    c = ctx.field.coerce(c)
    f = SFunc([chi[x] * (c + A[x]) if mask[x] else ctx.field.zero for x in range(ctx.n)], ctx.field)
    return f, chi


@dataclass
class SolutionFamily:
    tag: str
    chi: SFunc | None = None
    params: dict[str, str] = dc_field(default_factory=dict)
    A: list[SFunc] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"tag": self.tag, "params": dict(self.params), "I_chi": I_CHI_DEFINITION}
        if self.chi is not None:
            out["chi"] = [v.to_json() for v in self.chi]
        if self.A is not None:
            out["A_basis"] = [a.to_json() for a in self.A]
        return out


def canonical_pair(chi: SFunc, ctx: StructureInstance) -> SFunc:
    """The lexicographically smaller of chi, chi*."""
    cs = star(chi, ctx)
    return min(chi, cs, key=SFunc.sort_key)


def odd_additive_space(chi: SFunc, ctx: StructureInstance) -> list[SFunc]:
    I = null_ideal(chi, ctx.S)
    rest = I.complement(ctx.n)
    return additive_space(ctx.S, rest, ctx.field, odd_under=ctx.sigma)


def classify_eq1(ctx: StructureInstance, chars: list[SFunc] | None = None) -> list[SolutionFamily]:
    chars = enumerate_multiplicative(ctx.S, ctx.field) if chars is None else chars
    out = [SolutionFamily("EQ1_F1", params={"g": "arbitrary"})]
    seen = set()
    f3 = []
    for chi in chars:
        if chi.is_zero():
            continue
        canon = canonical_pair(chi, ctx)
        if canon in seen:
            continue
        seen.add(canon)
        out.append(SolutionFamily("EQ1_F2", canon, {"lambda": "free", "delta": "free", "constraint": "(lambda,delta)!=(0,0)"}))
        if star(canon, ctx) == canon:
            A = odd_additive_space(canon, ctx)
            if A:
                f3.append(SolutionFamily("EQ1_F3", canon, {"c": "free"}, A))
    return out + f3


def classify_eq2(ctx: StructureInstance, chars: list[SFunc] | None = None) -> list[SolutionFamily]:
    chars = enumerate_multiplicative(ctx.S, ctx.field) if chars is None else chars
    out = [SolutionFamily("EQ2_F1", params={"g": "arbitrary"})]
    seen = set()
    for chi in chars:
        canon = canonical_pair(chi, ctx)
        if canon in seen:
            continue
        seen.add(canon)
        if (chi + star(chi, ctx)).is_zero():
            continue  # collapses into F1
        out.append(SolutionFamily("EQ2_F2", canon, {"alpha": "free", "constraint": "alpha!=0"}))
    return out


def sine_addition_check(f: SFunc, g: SFunc, a: int, ctx: StructureInstance) -> ResidualReport:
    """With f_a(x) = f(ax) - f(a) g(x), check f_a(xy) = f_a(x) g(y) + f_a(y) g(x)."""
    if not residual_eq1(f, g, ctx).is_zero:
        raise PreconditionError("(f, g) does not solve EQ1")
    t = ctx.S.table
    n = ctx.n
    fa = [f[t[a][x]] - f[a] * g[x] for x in range(n)]

    def gen():
        for x in range(n):
            for y in range(n):
                yield x, y, fa[t[x][y]] - fa[x] * g[y] - fa[y] * g[x]

    return _report(gen())
