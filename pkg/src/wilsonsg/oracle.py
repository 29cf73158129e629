"""Independent verification of the classification results.

Both Wilson variants are linear in ``f`` once ``g`` is fixed, so the full
solution space ``{f : (f, g) solves EQ}`` is the kernel of an n^2 x n matrix
over the cyclotomic field.  The kernel is compared with the span predicted
by the solution families, as subspaces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .equations import (
    EQ1,
    EQ2,
    FamilyPreconditionError,
    make_dalembert,
    make_eq2_family2,
    make_family2,
    make_family3,
    odd_additive_space,
    residual_dalembert_variant,
    residual_eq1,
    residual_eq2,
    residual_mu_dalembert,
    sine_addition_check,
)
from .functions import (
    I_CHI_DEFINITION,
    SFunc,
    StructureInstance,
    enumerate_multiplicative,
    is_multiplicative,
    null_ideal,
    restrict_mask,
    star,
)
from .scalar import CyclotomicField, field
from .semigroup import CayleyTable, is_homomorphism, period_lcm

RANDOM_RATIONALS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2),
                    Fraction(-3, 2), Fraction(1, 3))


class OracleFailure(AssertionError):
    """A lemma or completeness check found a counterexample."""

    def __init__(self, message: str, detail: dict | None = None):
        super().__init__(message)
        self.detail = detail or {}


def _vec(f: SFunc) -> list:
    return list(f.values)


def _sfuncs(vectors, fld: CyclotomicField) -> list[SFunc]:
    return [SFunc(v, fld) for v in vectors]


# -- kernels ---------------------------------------------------------------

def equation_rows(equation: str, g: SFunc, ctx: StructureInstance) -> list[list]:
    """Row (x, y) holds the f-coefficients of f(xy) + mu(y) f(sigma(y)x) - 2 * rhs."""
    t, s, mu = ctx.S.table, ctx.sigma, ctx.mu
    n = ctx.n
    zero, one = ctx.field.zero, ctx.field.one
    two_g = [2 * v for v in g.values]
    rows = []
    for x in range(n):
        tx = t[x]
        for y in range(n):
            row = [zero] * n
            row[tx[y]] = row[tx[y]] + one
            k = t[s[y]][x]
            row[k] = row[k] + mu[y]
            if equation == EQ1:
                row[x] = row[x] - two_g[y]
            elif equation == EQ2:
                row[y] = row[y] - two_g[x]
            else:
                raise ValueError(f"kernel oracle is defined for eq1/eq2, not {equation!r}")
            rows.append(row)
    return rows


def kernel_f_given_g(equation: str, g: SFunc, ctx: StructureInstance) -> list[SFunc]:
    """Exact basis of {f : residual(f, g) = 0}."""
    rows = equation_rows(equation, g, ctx)
    return _sfuncs(linalg.nullspace(rows, ctx.n, ctx.field.one), ctx.field)


# -- predicted spaces ------------------------------------------------------

@dataclass
class Match:
    category: str          # zero | split | even | nonfamily
    chis: list[SFunc]


class FamilyIndex:
    """Per-instance lookup g -> [chi : (chi + chi*)/2 = g]."""

    def __init__(self, ctx: StructureInstance, chars: Sequence[SFunc] | None = None):
        self.ctx = ctx
        self.chars = list(enumerate_multiplicative(ctx.S, ctx.field) if chars is None else chars)
        self.stars = {chi: star(chi, ctx) for chi in self.chars}
        self.by_g: dict[SFunc, list[SFunc]] = {}
        for chi in self.chars:
            self.by_g.setdefault((chi + self.stars[chi]) / 2, []).append(chi)
        self._odd: dict[SFunc, list[SFunc]] = {}

    def __iter__(self):
        return iter(self.chars)

    def __len__(self) -> int:
        return len(self.chars)

    def __getitem__(self, i: int) -> SFunc:
        return self.chars[i]

    def star(self, chi: SFunc) -> SFunc:
        cs = self.stars.get(chi)
        return star(chi, self.ctx) if cs is None else cs

    def odd_additive(self, chi: SFunc) -> list[SFunc]:
        if chi not in self._odd:
            self._odd[chi] = odd_additive_space(chi, self.ctx)
        return self._odd[chi]

    def match(self, g: SFunc) -> Match:
        hits = self.by_g.get(g, [])
        if g.is_zero():
            return Match("zero", hits)
        if not hits:
            return Match("nonfamily", hits)
        if any(self.star(chi) != chi for chi in hits):
            return Match("split", hits)
        return Match("even", hits)


def family_index(ctx: StructureInstance, chars=None) -> FamilyIndex:
    if isinstance(chars, FamilyIndex) and chars.ctx is ctx:
        return chars
    return FamilyIndex(ctx, chars)


def match_family(g: SFunc, ctx: StructureInstance, chars=None) -> Match:
    return family_index(ctx, chars).match(g)


EXPECTED_DIM = {
    EQ1: {"zero": 0, "split": 2, "even": 1, "nonfamily": 0},
    EQ2: {"zero": 0, "split": 1, "even": 1, "nonfamily": 0},
}


def predicted_space(equation: str, g: SFunc, ctx: StructureInstance, chars=None) -> list[SFunc]:
    """Reduced basis of the f-space the solution families predict for this g."""
    index = family_index(ctx, chars)
    gens: list[SFunc] = []
    for chi in index.match(g).chis:
        cs = index.star(chi)
        if equation == EQ1:
            gens += [chi, cs]
            if cs == chi and chi == g and not chi.is_zero():
                # family (3): chi * (odd additive A) on S \ I_chi
                for A in index.odd_additive(chi):
                    gens.append(SFunc([chi[x] * A[x] for x in range(ctx.n)], ctx.field))
        elif equation == EQ2:
            gens.append((chi + cs) / 2)
        else:
            raise ValueError(f"unknown equation {equation!r}")
    return _sfuncs(linalg.reduced_basis([_vec(v) for v in gens], ctx.n), ctx.field)


@dataclass
class CompletenessReport:
    instance: dict
    equation: str
    g: SFunc
    source: str
    category: str
    kernel_dim: int
    predicted_dim: int
    expected_dim: int
    kernel_basis: list[SFunc]
    predicted_basis: list[SFunc]
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "equation": self.equation,
            "g": [v.to_json() for v in self.g],
            "source": self.source,
            "category": self.category,
            "kernel_dim": self.kernel_dim,
            "predicted_dim": self.predicted_dim,
            "expected_dim": self.expected_dim,
            "kernel_basis": [f.to_json()["values"] for f in self.kernel_basis],
            "predicted_basis": [f.to_json()["values"] for f in self.predicted_basis],
            "verdict": self.verdict,
        }


def random_pool(fld: CyclotomicField) -> list:
    pool = [fld.from_rational(q) for q in RANDOM_RATIONALS]
    pool += [fld.z_power(k) for k in range(fld.n)]
    return pool


def random_functions(ctx: StructureInstance, count: int, rng: random.Random) -> list[SFunc]:
    pool = random_pool(ctx.field)
    return [SFunc([rng.choice(pool) for _ in range(ctx.n)], ctx.field) for _ in range(count)]


def candidate_gs(ctx: StructureInstance, chars: Sequence[SFunc], random_g_count: int,
                 rng: random.Random) -> list[tuple[str, SFunc]]:
    """All (chi1 + chi2)/2 (this contains every (m + m*)/2) plus random draws."""
    out: list[tuple[str, SFunc]] = []
    seen: set[SFunc] = set()
    for i, c1 in enumerate(chars):
        for c2 in chars[i:]:
            g = (c1 + c2) / 2
            if g not in seen:
                seen.add(g)
                out.append(("pair", g))
    for g in random_functions(ctx, random_g_count, rng):
        out.append(("random", g))
    return out


def compare_spaces(equation: str, g: SFunc, source: str, ctx: StructureInstance,
                   chars: Sequence[SFunc], kernel: list[SFunc] | None = None,
                   corrupt_predicted: bool = False) -> CompletenessReport:
    if kernel is None:
        kernel = kernel_f_given_g(equation, g, ctx)
    index = family_index(ctx, chars)
    predicted = predicted_space(equation, g, ctx, index)
    if corrupt_predicted and predicted:
        predicted = predicted[:-1]
    category = index.match(g).category
    expected = EXPECTED_DIM[equation][category]
    n = ctx.n
    same = linalg.same_span([_vec(f) for f in kernel], [_vec(f) for f in predicted], n)
    ok = same and len(kernel) == expected
    return CompletenessReport(
        instance=ctx.to_json(), equation=equation, g=g, source=source, category=category,
        kernel_dim=len(kernel), predicted_dim=len(predicted), expected_dim=expected,
        kernel_basis=kernel, predicted_basis=predicted, verdict="pass" if ok else "fail",
    )


def verify_completeness(equation: str, ctx: StructureInstance, random_g_count: int = 20,
                        seed: int = 0, chars: Sequence[SFunc] | None = None,
                        corrupt_predicted: bool = False) -> list[CompletenessReport]:
    """Kernel vs predicted span for every family-shaped g and seeded random g."""
    index = family_index(ctx, chars)
    rng = random.Random(seed)
    return [
        compare_spaces(equation, g, src, ctx, index, corrupt_predicted=corrupt_predicted)
        for src, g in candidate_gs(ctx, index.chars, random_g_count, rng)
    ]


# -- lemma checks ----------------------------------------------------------

@dataclass
class LemmaReport:
    name: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def lemma31_kernel(chi: SFunc, phi: Sequence[int], S: CayleyTable) -> list[SFunc]:
    """Basis of {F : F(xy) + chi(y) F(phi(y) x) = 0 for all x, y}."""
    fld = chi.field
    n = S.order
    t = S.table
    rows = []
    for x in range(n):
        for y in range(n):
            row = [fld.zero] * n
            row[t[x][y]] += fld.one
            k = t[phi[y]][x]
            row[k] = row[k] + chi[y]
            rows.append(row)
    return _sfuncs(linalg.nullspace(rows, n, fld.one), fld)


def lemma31_space(chi: SFunc, phi: Sequence[int], S: CayleyTable) -> LemmaReport:
    """Kernel members vanish on S*S*S, and the kernel is {0} when S = S*S."""
    if not is_multiplicative(chi, S):
        raise ValueError("chi must be multiplicative")
    if not is_homomorphism(S, phi):
        raise ValueError("phi must be a homomorphism")
    kernel = lemma31_kernel(chi, phi, S)
    sss = sorted(S.triple_products())
    bad = [(i, x) for i, F in enumerate(kernel) for x in sss if F[x]]
    full = len(S.products()) == S.order
    passed = not bad and (not full or not kernel)
    detail = {"kernel_dim": len(kernel), "S_equals_SS": full}
    if bad:
        detail["nonvanishing_on_SSS"] = [{"basis": i, "x": x} for i, x in bad]
    if not passed:
        detail["kernel"] = [F.to_json()["values"] for F in kernel]
    return LemmaReport("lemma31", passed, detail)


def lemma32_check(S: CayleyTable) -> LemmaReport:
    """Joint kernel of f(xy) = F(yx): every solution has f = F (needs S = S*S)."""
    if len(S.products()) != S.order:
        raise ValueError("lemma32_check requires S = S*S")
    fld = field(1)
    n = S.order
    t = S.table
    rows = []
    for x in range(n):
        for y in range(n):
            row = [fld.zero] * (2 * n)
            row[t[x][y]] += fld.one
            row[n + t[y][x]] -= fld.one
            rows.append(row)
    basis = linalg.nullspace(rows, 2 * n, fld.one)
    bad = [i for i, v in enumerate(basis) if v[:n] != v[n:]]
    return LemmaReport("lemma32", not bad, {"kernel_dim": len(basis), "bad_basis": bad})


def default_value_grid(ctx: StructureInstance) -> list:
    L = period_lcm(ctx.S)
    fld = ctx.field
    base = [fld.zero] + [fld.root_of_unity(L, k) for k in range(L)]
    grid = []
    seen = set()
    for i, u in enumerate(base):
        for v in base[i:]:
            w = (u + v) / 2
            if w not in seen:
                seen.add(w)
                grid.append(w)
    return grid


def dalembert_grid_solutions(ctx: StructureInstance, value_grid: Sequence) -> list[SFunc]:
    """Every g with values in the grid solving g(xy) + mu(y) g(sigma(y)x) = 2 g(x) g(y)."""
    n = ctx.n
    t, s, mu = ctx.S.table, ctx.sigma, ctx.mu
    checks: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            a, b = t[x][y], t[s[y]][x]
            checks[max(x, y, a, b)].append((x, y, a, b))
    val: list = [None] * n
    out = []

    def rec(k: int):
        if k == n:
            out.append(SFunc(val, ctx.field))
            return
        for v in value_grid:
            val[k] = v
            if all(val[a] + mu[y] * val[b] == 2 * val[x] * val[y] for x, y, a, b in checks[k]):
                rec(k + 1)
        val[k] = None

    rec(0)
    return out


# solved with the instance's own (sigma, mu), whatever symbols a statement uses
LEMMA33_EQUATION = "g(xy) + mu(y) g(sigma(y) x) = 2 g(x) g(y), (sigma, mu) from the instance"


def lemma33_grid_completeness(ctx: StructureInstance, value_grid: Sequence | None = None,
                              chars: Sequence[SFunc] | None = None) -> LemmaReport:
    """Grid-restricted completeness of g = (m + m*)/2 for the d'Alembert variant.

    Only solutions whose values lie on ``value_grid`` are enumerated; solutions
    off the grid are not excluded by this check.
    """
    if ctx.n > 4:
        raise ValueError("grid search is limited to |S| <= 4")
    if value_grid is None:
        value_grid = default_value_grid(ctx)
    if chars is None:
        chars = enumerate_multiplicative(ctx.S, ctx.field)
    classified = {make_dalembert(m, ctx) for m in chars}
    found = dalembert_grid_solutions(ctx, value_grid)
    unmatched = [g for g in found if g not in classified]
    grid_set = set(value_grid)
    off_grid = [g for g in classified if any(v not in grid_set for v in g)]
    missing = [g for g in classified if g not in set(found) and g not in off_grid]
    passed = not unmatched and not missing
    detail = {"equation": LEMMA33_EQUATION, "grid_size": len(value_grid), "grid_solutions": len(found),
              "classified": len(classified)}
    if unmatched:
        detail["unmatched"] = [g.to_json()["values"] for g in unmatched]
    if missing:
        detail["missing"] = [g.to_json()["values"] for g in missing]
    return LemmaReport("lemma33", passed, detail)


def central_subspace(kernel: Sequence[SFunc], ctx: StructureInstance) -> list[SFunc]:
    """Basis of the central functions inside span(kernel)."""
    k = len(kernel)
    if not k:
        return []
    fld = ctx.field
    t = ctx.S.table
    n = ctx.n
    rows = [[F[t[x][y]] - F[t[y][x]] for F in kernel] for x in range(n) for y in range(x + 1, n)]
    coeffs = linalg.nullspace(rows, k, fld.one) if rows else [
        [fld.one if i == j else fld.zero for j in range(k)] for i in range(k)
    ]
    out = []
    for c in coeffs:
        vals = [sum((c[i] * kernel[i][x] for i in range(k)), fld.zero) for x in range(n)]
        out.append(SFunc(vals, fld))
    return out


def lemma41_for_g(g: SFunc, ctx: StructureInstance, kernel: list[SFunc] | None = None) -> LemmaReport:
    """If a nonzero central f solves EQ1 with g, then g solves the mu-d'Alembert equation."""
    if kernel is None:
        kernel = kernel_f_given_g(EQ1, g, ctx)
    central = central_subspace(kernel, ctx)
    detail = {"kernel_dim": len(kernel), "central_dim": len(central),
              "noncentral_kernel": len(central) < len(kernel)}
    if not central:
        return LemmaReport("lemma41", True, detail)
    rep = residual_mu_dalembert(g, ctx)
    if not rep.is_zero:
        detail["residual"] = rep.to_json()
    return LemmaReport("lemma41", rep.is_zero, detail)


def lemma41_check(ctx: StructureInstance, gs: Iterable[SFunc] | None = None,
                  chars: Sequence[SFunc] | None = None) -> list[LemmaReport]:
    if gs is None:
        if chars is None:
            chars = enumerate_multiplicative(ctx.S, ctx.field)
        gs = [g for _, g in candidate_gs(ctx, chars, 0, random.Random(0))]
    return [lemma41_for_g(g, ctx) for g in gs]


# -- constructive checks ---------------------------------------------------

def family_residual_checks(ctx: StructureInstance, chars: Sequence[SFunc]) -> list[LemmaReport]:
    """Every constructed family member solves its equation exactly."""
    fld = ctx.field
    params = [fld.zero, fld.one, fld.from_rational(2), fld.z_power(1)]
    out = []
    for i, chi in enumerate(chars):
        g = make_dalembert(chi, ctx)
        rep = residual_dalembert_variant(g, ctx)
        out.append(LemmaReport("dalembert_residual", rep.is_zero, {"chi": i, **rep.to_json()}))
        out.append(LemmaReport("dalembert_even", star(g, ctx) == g, {"chi": i}))
        for alpha in params[1:]:
            f2, g2 = make_eq2_family2(chi, alpha, ctx)
            rep = residual_eq2(f2, g2, ctx)
            out.append(LemmaReport("eq2_family2_residual", rep.is_zero, {"chi": i, "alpha": str(alpha), **rep.to_json()}))
        if chi.is_zero():
            continue
        for lam in params:
            for delta in params:
                if not lam and not delta:
                    continue
                f1, g1 = make_family2(chi, lam, delta, ctx)
                rep = residual_eq1(f1, g1, ctx)
                out.append(LemmaReport("eq1_family2_residual", rep.is_zero,
                                       {"chi": i, "lambda": str(lam), "delta": str(delta), **rep.to_json()}))
        if star(chi, ctx) == chi:
            A = odd_additive_space(chi, ctx)
            I = null_ideal(chi, ctx.S)
            zeroA = SFunc([fld.zero] * ctx.n, fld, restrict_mask(I, ctx.n))
            try:
                make_family3(chi, fld.one, zeroA, ctx)
                refused = False
            except FamilyPreconditionError as exc:
                refused = exc.kind == "A_zero"
            out.append(LemmaReport("family3_obstruction", not A and refused,
                                   {"chi": i, "odd_additive_dim": len(A)}))
    return out


def sine_addition_reports(kernel: Sequence[SFunc], g: SFunc, ctx: StructureInstance) -> list[LemmaReport]:
    out = []
    for i, f in enumerate(kernel):
        bad = [a for a in range(ctx.n) if not sine_addition_check(f, g, a, ctx).is_zero]
        out.append(LemmaReport("sine_addition", not bad, {"basis": i, "failing_a": bad}))
    return out


I_CHI_NOTE = I_CHI_DEFINITION
