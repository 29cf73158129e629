from __future__ import annotations

import random

import pytest

from wilsonsg.equations import EQ1, EQ2, residual_eq1
from wilsonsg.functions import SFunc, StructureInstance, enumerate_multiplicative
from wilsonsg.linalg import same_span
from wilsonsg.oracle import (
    FamilyIndex,
    candidate_gs,
    central_subspace,
    compare_spaces,
    dalembert_grid_solutions,
    default_value_grid,
    kernel_f_given_g,
    lemma31_kernel,
    lemma31_space,
    lemma32_check,
    lemma33_grid_completeness,
    lemma41_check,
    lemma41_for_g,
    match_family,
    predicted_space,
    random_functions,
    verify_completeness,
)
from wilsonsg.scalar import field
from wilsonsg.semigroup import enumerate_endomorphisms, validate


def _vecs(fs):
    return [list(f) for f in fs]


def test_kernel_examples(z3_neg, z3_chars, mult01_ctx):
    _, c1, c2 = z3_chars
    g = (c1 + c2) / 2
    k = kernel_f_given_g(EQ1, g, z3_neg)
    assert len(k) == 2
    assert same_span(_vecs(k), _vecs([c1, c2]), 3)
    for f in k:
        assert residual_eq1(f, g, z3_neg).is_zero

    ind1 = SFunc([0, 1], mult01_ctx.field)
    k = kernel_f_given_g(EQ1, ind1, mult01_ctx)
    assert len(k) == 1 and same_span(_vecs(k), _vecs([ind1]), 2)

    assert kernel_f_given_g(EQ1, z3_neg.zero(), z3_neg) == []
    assert kernel_f_given_g(EQ2, mult01_ctx.zero(), mult01_ctx) == []


def test_eq2_kernel(z3_neg, z3_chars):
    _, c1, c2 = z3_chars
    g = (c1 + c2) / 2
    k = kernel_f_given_g(EQ2, g, z3_neg)
    assert len(k) == 1 and same_span(_vecs(k), _vecs([g]), 3)


def test_predicted_space_examples(z3_neg, z3_chars):
    c0, c1, c2 = z3_chars
    pred = predicted_space(EQ1, (c1 + c2) / 2, z3_neg)
    assert same_span(_vecs(pred), _vecs([c1, c2]), 3)
    rnd = SFunc([2, -1, 7], z3_neg.field)
    assert predicted_space(EQ1, rnd, z3_neg) == []
    pred = predicted_space(EQ1, c0, z3_neg)
    assert same_span(_vecs(pred), _vecs([c0]), 3)
    with pytest.raises(ValueError):
        predicted_space("eq3", c0, z3_neg)


def test_match_categories(z3_neg, z3_chars):
    c0, c1, c2 = z3_chars
    assert match_family(z3_neg.zero(), z3_neg).category == "zero"
    assert match_family((c1 + c2) / 2, z3_neg).category == "split"
    assert match_family(c0, z3_neg).category == "even"
    assert match_family(c1, z3_neg).category == "nonfamily"


@pytest.mark.parametrize("which", ["z3", "mult01"])
def test_verify_completeness_sweeps(which, z3_neg, mult01_ctx):
    ctx = z3_neg if which == "z3" else mult01_ctx
    for eq in (EQ1, EQ2):
        reps = verify_completeness(eq, ctx, random_g_count=20, seed=3)
        assert reps and all(r.passed for r in reps), [r.to_json() for r in reps if not r.passed]
        randoms = [r for r in reps if r.source == "random"]
        assert len(randoms) == 20
        assert all(r.kernel_dim == 0 for r in randoms if r.category == "nonfamily")


def test_corrupted_prediction_is_caught(z3_neg):
    reps = verify_completeness(EQ1, z3_neg, random_g_count=0, corrupt_predicted=True)
    assert any(not r.passed for r in reps)
    bad = next(r for r in reps if not r.passed)
    assert bad.to_json()["verdict"] == "fail"


def test_candidate_gs_are_deterministic(z3_neg):
    chars = enumerate_multiplicative(z3_neg.S, z3_neg.field)
    a = candidate_gs(z3_neg, chars, 5, random.Random(1))
    b = candidate_gs(z3_neg, chars, 5, random.Random(1))
    assert a == b
    pairs = [g for src, g in a if src == "pair"]
    assert len(pairs) == len(set(pairs))


def test_lemma31_examples(z3):
    fld = field(6)
    one = SFunc.constant(fld, 3, 1)
    assert lemma31_kernel(one, (0, 1, 2), z3) == []
    assert lemma31_space(one, (0, 1, 2), z3).passed


def test_lemma31_with_endomorphisms():
    # homomorphisms that are not automorphisms are allowed too
    for S in (validate([[0, 0], [0, 1]]), validate([[0, 1, 2], [1, 2, 0], [2, 0, 1]])):
        fld = field(6)
        for phi in enumerate_endomorphisms(S):
            for chi in enumerate_multiplicative(S, fld):
                assert lemma31_space(chi, phi, S).passed


def test_lemma31_non_square_generated():
    S = validate([[1, 1], [1, 1]])  # xy = 1 always; S^3 = {1}
    fld = field(2)
    chi = SFunc.constant(fld, 2, 1)
    kernel = lemma31_kernel(chi, (0, 1), S)
    assert kernel and any(F[0] for F in kernel)
    rep = lemma31_space(chi, (0, 1), S)
    assert rep.passed and rep.detail["kernel_dim"] == len(kernel)


def test_lemma32_examples(trivial, z3, mult01):
    for S in (trivial, z3, mult01):
        assert lemma32_check(S).passed
    with pytest.raises(ValueError):
        lemma32_check(validate([[1, 1], [1, 1]]))


def test_lemma33_examples(z3_neg, z3_chars, trivial, mult01_ctx):
    c0, c1, c2 = z3_chars
    sols = dalembert_grid_solutions(z3_neg, default_value_grid(z3_neg))
    assert set(sols) == {z3_neg.zero(), c0, (c1 + c2) / 2}
    assert lemma33_grid_completeness(z3_neg).passed

    one = StructureInstance(trivial)
    sols = dalembert_grid_solutions(one, default_value_grid(one))
    assert set(sols) == {SFunc([0], one.field), SFunc([1], one.field)}
    assert lemma33_grid_completeness(mult01_ctx).passed


def test_lemma41_examples(z3_neg, z3_chars):
    assert all(r.passed for r in lemma41_check(z3_neg))
    rnd = SFunc([3, 1, 4], z3_neg.field)
    rep = lemma41_for_g(rnd, z3_neg)
    assert rep.passed and rep.detail["kernel_dim"] == 0
    _, c1, c2 = z3_chars
    rep = lemma41_for_g((c1 + c2) / 2, z3_neg)
    assert rep.passed and rep.detail["central_dim"] == 2


def test_central_subspace():
    S = validate([[0, 0], [1, 1]])  # left zero band: xy = x
    fld = field(2)
    basis = [SFunc([1, 0], fld), SFunc([0, 1], fld)]
    cen = central_subspace(basis, StructureInstance(S, check=False))
    assert len(cen) == 1 and cen[0][0] == cen[0][1]


def test_family_index(z3_neg):
    idx = FamilyIndex(z3_neg)
    assert len(idx) == 4
    assert idx.star(idx[1]) in list(idx)


def test_random_functions_seeded(z3_neg):
    a = random_functions(z3_neg, 4, random.Random(9))
    b = random_functions(z3_neg, 4, random.Random(9))
    assert a == b


def test_compare_spaces_report(z3_neg, z3_chars):
    _, c1, c2 = z3_chars
    rep = compare_spaces(EQ1, (c1 + c2) / 2, "pair", z3_neg, enumerate_multiplicative(z3_neg.S, z3_neg.field))
    obj = rep.to_json()
    assert obj["kernel_dim"] == obj["expected_dim"] == 2 and obj["verdict"] == "pass"
