"""Exhaustive verification over all labeled semigroups up to a given order."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .equations import EQ1, EQ2
from .functions import (
    StructureInstance,
    additive_space,
    enumerate_multiplicative,
    enumerate_mu,
    null_ideal,
)
from .oracle import (
    FamilyIndex,
    candidate_gs,
    compare_spaces,
    family_residual_checks,
    kernel_f_given_g,
    lemma31_space,
    lemma32_check,
    lemma33_grid_completeness,
    lemma41_for_g,
    sine_addition_reports,
)
from .scalar import field
from .semigroup import (
    HARD_MAX_ORDER,
    CayleyTable,
    OrderBoundExceeded,
    conductor_for,
    enumerate_involutive_automorphisms,
    enumerate_semigroups,
    is_square_generated,
)

GRID_MAX_ORDER = 3


@dataclass
class TableResult:
    order: int
    index: int
    square_generated: bool
    counts: Counter = dc_field(default_factory=Counter)
    failures: list[dict] = dc_field(default_factory=list)
    notes: Counter = dc_field(default_factory=Counter)


def _tally(res: TableResult, check: str, passed: bool, instance: dict, detail) -> None:
    res.counts[f"{check}.checks"] += 1
    if not passed:
        res.counts[f"{check}.failures"] += 1
        res.failures.append({"check": check, "instance": instance, "detail": detail})


def verify_instance(ctx: StructureInstance, chars, res: TableResult, rng: random.Random,
                    random_g_count: int, grid: bool) -> None:
    inst = ctx.to_json()
    index = FamilyIndex(ctx, chars)
    for rep in family_residual_checks(ctx, chars):
        _tally(res, rep.name, rep.passed, inst, rep.detail)
    for src, g in candidate_gs(ctx, chars, random_g_count, rng):
        k1 = kernel_f_given_g(EQ1, g, ctx)
        for eq, kernel in ((EQ1, k1), (EQ2, None)):
            rep = compare_spaces(eq, g, src, ctx, index, kernel=kernel)
            _tally(res, f"completeness_{eq}", rep.passed, inst, rep.to_json())
            res.counts[f"dim.{eq}.{rep.category}.{rep.kernel_dim}"] += 1
        lem = lemma41_for_g(g, ctx, kernel=k1)
        _tally(res, "lemma41", lem.passed, inst, {"g": [v.to_json() for v in g], **lem.detail})
        if lem.detail["noncentral_kernel"]:
            res.notes["lemma41.noncentral_kernel"] += 1
        for rep in sine_addition_reports(k1, g, ctx):
            _tally(res, "sine_addition", rep.passed, inst, rep.detail)
    if grid:
        lem = lemma33_grid_completeness(ctx, chars=chars)
        _tally(res, "lemma33", lem.passed, inst, lem.detail)


def verify_table(S: CayleyTable, index: int, seed: int, random_g_count: int = 20,
                 grid_max_order: int = GRID_MAX_ORDER) -> TableResult:
    ok, _ = is_square_generated(S)
    res = TableResult(S.order, index, ok)
    if not ok:
        return res
    sj = S.to_json()
    fld = field(conductor_for(S))
    chars = enumerate_multiplicative(S, fld)
    lem = lemma32_check(S)
    _tally(res, "lemma32", lem.passed, {"semigroup": sj}, lem.detail)
    _tally(res, "square_generated_is_SS", len(S.products()) == S.order, {"semigroup": sj}, {})
    for i, chi in enumerate(chars):
        rest = null_ideal(chi, S).complement(S.order)
        dim = len(additive_space(S, rest, fld))
        _tally(res, "additive_space_zero", dim == 0, {"semigroup": sj}, {"chi": i, "dim": dim})
    for sigma in enumerate_involutive_automorphisms(S):
        for i, chi in enumerate(chars):
            lem = lemma31_space(chi, sigma, S)
            _tally(res, "lemma31", lem.passed, {"semigroup": sj, "sigma": list(sigma)}, {"chi": i, **lem.detail})
        for j, mu in enumerate(enumerate_mu(S, sigma, fld)):
            ctx = StructureInstance(S, sigma, mu, fld)
            res.counts["instances"] += 1
            rng = random.Random(f"{seed}:{S.order}:{index}:{list(sigma)}:{j}")
            verify_instance(ctx, chars, res, rng, random_g_count, S.order <= grid_max_order)
    return res


def _work(args) -> TableResult:
    S, index, seed, random_g_count, grid_max_order = args
    return verify_table(S, index, seed, random_g_count, grid_max_order)


def _tasks(max_order: int, seed: int, random_g_count: int, grid_max_order: int) -> Iterator[tuple]:
    for n in range(1, max_order + 1):
        for i, S in enumerate(enumerate_semigroups(n, max_order=max(max_order, 4))):
            yield (S, i, seed, random_g_count, grid_max_order)


@dataclass
class CensusReport:
    max_order: int
    seed: int
    random_g_count: int
    per_order: dict[int, dict] = dc_field(default_factory=dict)
    failures: list[dict] = dc_field(default_factory=list)

    @property
    def failure_count(self) -> int:
        return sum(o["failures"] for o in self.per_order.values())

    def scanned(self, order: int) -> int:
        return self.per_order[order]["scanned"]

    def to_json(self) -> dict:
        return {
            "max_order": self.max_order,
            "seed": self.seed,
            "random_g_count": self.random_g_count,
            "I_chi_definition": "I_chi := chi^-1(0)",
            "per_order": {str(k): v for k, v in sorted(self.per_order.items())},
            "total_failures": self.failure_count,
            "failures": self.failures,
        }


def census_verify(max_order: int, seed: int = 0, random_g_count: int = 20, jobs: int = 1,
                  grid_max_order: int = GRID_MAX_ORDER, progress=None) -> CensusReport:
    """Stream every labeled semigroup of order <= max_order through all checks.

    Results are merged in enumeration order, so the report does not depend on
    ``jobs``.
    """
    if max_order > HARD_MAX_ORDER or max_order < 1:
        raise OrderBoundExceeded(f"max_order must be in 1..{HARD_MAX_ORDER}")
    report = CensusReport(max_order, seed, random_g_count)
    for n in range(1, max_order + 1):
        report.per_order[n] = {"scanned": 0, "square_generated": 0, "instances": 0,
                               "failures": 0, "checks": {}, "notes": {}, "dimensions": {}}
    tasks = _tasks(max_order, seed, random_g_count, grid_max_order)
    if jobs > 1:
        import multiprocessing as mp

        pool = mp.Pool(jobs)
        results = pool.imap(_work, tasks, chunksize=16)
    else:
        pool = None
        results = map(_work, tasks)
    try:
        for res in results:
            agg = report.per_order[res.order]
            agg["scanned"] += 1
            agg["square_generated"] += int(res.square_generated)
            agg["instances"] += res.counts["instances"]
            for key, val in res.counts.items():
                if key == "instances":
                    continue
                bucket = "dimensions" if key.startswith("dim.") else "checks"
                agg[bucket][key] = agg[bucket].get(key, 0) + val
            for key, val in res.notes.items():
                agg["notes"][key] = agg["notes"].get(key, 0) + val
            agg["failures"] += len(res.failures)
            report.failures.extend(res.failures)
            if progress is not None:
                progress(res)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    for agg in report.per_order.values():
        for bucket in ("checks", "notes", "dimensions"):
            agg[bucket] = dict(sorted(agg[bucket].items()))
    return report
