"""Command-line entry point.

Exit codes: 0 verified / valid, 1 counterexample or invalid structure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .census import census_verify
from .equations import (
    DALEMBERT,
    EQ1,
    EQ2,
    FamilyPreconditionError,
    classify_eq1,
    classify_eq2,
)
from .functions import BlanketAssumptionViolated, StructureInstance, enumerate_multiplicative, enumerate_mu
from .io import InputError, InstanceSpec, load_instance, load_json, read_input
from .oracle import (
    FamilyIndex,
    family_residual_checks,
    lemma31_space,
    lemma32_check,
    lemma33_grid_completeness,
    lemma41_check,
    verify_completeness,
)
from .qspace import (
    DEFAULT_GRID,
    QSpaceError,
    make_family3 as make_family3_q,
    parse_draw,
    residual_eq1_symbolic,
    verify_family3_grid,
)
from .scalar import ConductorMismatch
from .semigroup import (
    HARD_MAX_ORDER,
    AssocFail,
    SemigroupError,
    enumerate_involutive_automorphisms,
    is_square_generated,
    validate,
)

OK, FAIL, USAGE = 0, 1, 2
GRID_MAX_ORDER = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def _header(command: str, seed: int | None = None) -> dict:
    out = {"tool": {"name": "wilsonsg", "version": __version__}, "command": command}
    if seed is not None:
        out["seed"] = seed
    return out


def _emit(report: dict, output: str | None) -> None:
    if output:
        Path(output).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _instances(spec: InstanceSpec) -> list[StructureInstance]:
    """Explicit (sigma, mu) or every admissible choice when absent."""
    S = spec.S
    ok, closure = is_square_generated(S)
    if not ok:
        raise BlanketAssumptionViolated(f"semigroup is not generated by its squares (closure {sorted(closure)})")
    sigmas = [spec.sigma] if spec.sigma is not None else enumerate_involutive_automorphisms(S)
    out = []
    for sigma in sigmas:
        if spec.mu is not None:
            out.append(StructureInstance(S, sigma, spec.mu))
        else:
            ctx0 = StructureInstance(S, sigma)
            out += [StructureInstance(S, sigma, mu, ctx0.field) for mu in enumerate_mu(S, sigma, ctx0.field)]
    return out


def _load_instances(path: str) -> tuple[InstanceSpec, list[StructureInstance]]:
    spec = load_instance(path)
    return spec, _instances(spec)


# -- validate --------------------------------------------------------------

def cmd_validate(args) -> int:
    rows, obj = read_input(args.path)
    report = _header("validate")
    try:
        S = validate(rows)
    except AssocFail as exc:
        report.update(valid=False, associative=False, assoc_fail={"triple": list(exc.triple)})
        _emit(report, args.output)
        print(f"invalid: not associative at (x,y,z)={exc.triple}")
        return FAIL
    report.update(order=S.order, associative=True)
    ok, closure = is_square_generated(S)
    report["square_generated"] = ok
    lines = [f"order {S.order}: associative", f"square-generated: {'yes' if ok else 'no'}"]
    valid = ok
    if not ok:
        report["square_closure"] = sorted(closure)
    if obj is not None and ok:
        try:
            spec = load_instance(args.path)
            ctxs = _instances(spec)
            report["instances"] = len(ctxs)
            lines.append(f"admissible (sigma, mu) instances: {len(ctxs)}")
        except (BlanketAssumptionViolated, ConductorMismatch) as exc:
            valid = False
            report["instance_error"] = str(exc)
            lines.append(f"blanket assumption violated: {exc}")
    report["valid"] = valid
    _emit(report, args.output)
    print("\n".join(lines))
    print("valid" if valid else "invalid")
    return OK if valid else FAIL


# -- classify --------------------------------------------------------------

def cmd_classify(args) -> int:
    spec, ctxs = _load_instances(args.path)
    eqs = [EQ1, EQ2] if args.equation == "all" else [args.equation]
    if DALEMBERT in eqs:
        raise InputError("classify supports eq1, eq2 or all")
    report = _header("classify")
    report["instances"] = []
    for ctx in ctxs:
        chars = enumerate_multiplicative(ctx.S, ctx.field)
        entry = {"instance": ctx.to_json()}
        for eq in eqs:
            fams = classify_eq1(ctx, chars) if eq == EQ1 else classify_eq2(ctx, chars)
            entry[eq] = [f.to_json() for f in fams]
            tags = {}
            for f in fams:
                tags[f.tag] = tags.get(f.tag, 0) + 1
            print(f"sigma={list(ctx.sigma)} {eq}: " + ", ".join(f"{k} x{v}" for k, v in tags.items()))
        report["instances"].append(entry)
    _emit(report, args.output)
    return OK


# -- verify ----------------------------------------------------------------

def _verify_instance(ctx: StructureInstance, eqs, args) -> tuple[dict, list[dict]]:
    chars = FamilyIndex(ctx)
    failures: list[dict] = []
    summary: dict = {"instance": ctx.to_json()}

    def note(name, reps):
        bad = [r for r in reps if not r.passed]
        summary[name] = {"checks": len(reps), "failures": len(bad)}
        failures.extend({"check": name, "instance": ctx.to_json(), "detail": r.to_json()} for r in bad)

    for eq in eqs:
        if eq == DALEMBERT:
            reps = [r for r in family_residual_checks(ctx, chars.chars) if r.name.startswith("dalembert")]
            note("dalembert_residual", reps)
            if ctx.n <= GRID_MAX_ORDER:
                note("lemma33", [lemma33_grid_completeness(ctx, chars=chars.chars)])
            continue
        reps = verify_completeness(eq, ctx, args.random_g, args.seed, chars,
                                   corrupt_predicted=args.corrupt_predicted)
        note(f"completeness_{eq}", reps)
        prefix = "eq1_family2" if eq == EQ1 else "eq2_family2"
        note(f"{prefix}_residual", [r for r in family_residual_checks(ctx, chars.chars) if r.name.startswith(prefix)])
    if EQ1 in eqs:
        note("lemma31", [lemma31_space(chi, ctx.sigma, ctx.S) for chi in chars.chars])
        note("lemma41", lemma41_check(ctx, chars=chars.chars))
    return summary, failures


def cmd_verify(args) -> int:
    if args.random_g < 0:
        raise InputError("--random-g must be >= 0")
    spec, ctxs = _load_instances(args.path)
    eqs = [EQ1, EQ2, DALEMBERT] if args.equation == "all" else [args.equation]
    report = _header("verify", args.seed)
    report.update(equations=eqs, random_g_count=args.random_g)
    lem = lemma32_check(spec.S)
    failures = [] if lem.passed else [{"check": "lemma32", "detail": lem.to_json()}]
    report["lemma32"] = lem.to_json()
    summaries = []
    for ctx in ctxs:
        summary, bad = _verify_instance(ctx, eqs, args)
        summaries.append(summary)
        failures += bad
    report.update(instances=summaries, failure_count=len(failures), failures=failures)
    _emit(report, args.output)
    print(f"{len(ctxs)} instance(s), equations {','.join(eqs)}: {len(failures)} failure(s)")
    for f in failures[:5]:
        print("counterexample:", json.dumps(f, sort_keys=True)[:400])
    return OK if not failures else FAIL


# -- census ----------------------------------------------------------------

def cmd_census(args) -> int:
    if not 1 <= args.max_order <= HARD_MAX_ORDER:
        _err(f"--max-order must be in 1..{HARD_MAX_ORDER} (got {args.max_order})")
        return USAGE
    if args.random_g < 0 or args.jobs < 1:
        raise InputError("--random-g must be >= 0 and --jobs >= 1")
    t0 = time.perf_counter()
    rep = census_verify(args.max_order, seed=args.seed, random_g_count=args.random_g, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    report = _header("census", args.seed)
    report.update(rep.to_json())
    _emit(report, args.output)
    for n, agg in sorted(rep.per_order.items()):
        print(f"order {n}: scanned={agg['scanned']} square_generated={agg['square_generated']} "
              f"instances={agg['instances']} failures={agg['failures']}")
    print(f"total failures={rep.failure_count} ({elapsed:.1f}s)")
    return OK if rep.failure_count == 0 else FAIL


# -- qspace-verify ---------------------------------------------------------

def cmd_qspace_verify(args) -> int:
    report = _header("qspace-verify", args.seed)
    if args.draw is None:
        grid = verify_family3_grid(DEFAULT_GRID, seed=args.seed)
        report.update(grid=grid.to_json())
        _emit(report, args.output)
        print(f"{len(grid.draws)} draws: zero residuals {grid.zero_residuals}/{len(grid.draws)}, "
              f"nonzero twins {grid.nonzero_twins}/{len(grid.draws)}")
        return OK if grid.passed else FAIL
    obj = load_json(Path(args.draw))
    if not isinstance(obj, dict):
        raise InputError("draw file must be a JSON object")
    try:
        ctx, chi, A, c = parse_draw(obj)
    except QSpaceError as exc:
        raise InputError(str(exc)) from None
    try:
        make_family3_q(chi, c, A, ctx)
    except (FamilyPreconditionError, QSpaceError) as exc:
        kind = getattr(exc, "kind", "precondition")
        report.update(passed=False, precondition=kind, message=str(exc))
        _emit(report, args.output)
        print(f"precondition violated: {exc}")
        return FAIL
    mu = chi - ctx.sigma_form(chi)
    res = residual_eq1_symbolic(chi, mu, A, c, ctx)
    zero = res.is_zero()
    report.update(passed=zero, space=ctx.to_json(), chi_exponent=chi.to_json(), mu_exponent=mu.to_json(),
                  A=A.to_json(), residual=res.to_json())
    _emit(report, args.output)
    print(f"residual {'zero' if zero else 'NONZERO'}")
    return OK if zero else FAIL


# -- wiring ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wilsonsg", description="Exact verification of Wilson-type equations on finite semigroups.")
    p.add_argument("--version", action="version", version=f"wilsonsg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=True):
        sp.add_argument("--output", "-o", help="write the JSON report here")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("validate", help="check associativity, square generation and sigma/mu")
    sp.add_argument("path")
    common(sp, seed=False)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classify", help="list the solution families of an instance")
    sp.add_argument("path")
    sp.add_argument("--equation", choices=[EQ1, EQ2, "all"], default="all")
    common(sp, seed=False)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="compare kernel and predicted solution spaces")
    sp.add_argument("path")
    sp.add_argument("--equation", choices=[EQ1, EQ2, DALEMBERT, "all"], default="all")
    sp.add_argument("--random-g", type=int, default=20)
    sp.add_argument("--corrupt-predicted", action="store_true", help=argparse.SUPPRESS)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("census", help="verify every labeled semigroup up to an order")
    sp.add_argument("--max-order", type=int, default=4)
    sp.add_argument("--random-g", type=int, default=20)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("qspace-verify", help="symbolic family (3) check on (Q^d, +)")
    sp.add_argument("draw", nargs="?", help="draw file; omit for the default seeded grid")
    sp.add_argument("--grid", action="store_true", help="run the default grid (same as omitting the draw file)")
    common(sp)
    sp.set_defaults(func=cmd_qspace_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _err(str(exc))
        return USAGE
    except AssocFail as exc:
        _err(f"not associative at (x,y,z)={exc.triple}")
        return FAIL
    except (BlanketAssumptionViolated, ConductorMismatch) as exc:
        _err(f"blanket assumption violated: {exc}")
        return FAIL
    except SemigroupError as exc:
        _err(str(exc))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
