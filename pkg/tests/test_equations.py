from __future__ import annotations

import pytest

from wilsonsg import qspace
from wilsonsg.equations import (
    DALEMBERT,
    EQ1,
    EQ2,
    FamilyPreconditionError,
    PreconditionError,
    classify_eq1,
    classify_eq2,
    make_dalembert,
    make_eq2_family2,
    make_family2,
    make_family3,
    residual,
    residual_dalembert_variant,
    residual_eq1,
    residual_eq2,
    residual_mu_dalembert,
    sine_addition_check,
)
from wilsonsg.functions import (
    SFunc,
    StructureInstance,
    enumerate_multiplicative,
    enumerate_mu,
    is_central,
    star,
)
from wilsonsg.scalar import field
from wilsonsg.semigroup import (
    conductor_for,
    enumerate_involutive_automorphisms,
    enumerate_semigroups,
    is_square_generated,
)


def test_residual_eq1_examples(z3_neg, z3_chars):
    c0, c1, c2 = z3_chars
    g = (c1 + c2) / 2
    assert residual_eq1(z3_neg.zero(), g, z3_neg).is_zero
    assert residual_eq1(c1 + c2, g, z3_neg).is_zero
    rep = residual_eq1(c1, c0, z3_neg)
    assert not rep.is_zero
    # first violation in row-major order: (x, y) = (0, 1), value w + w^2 - 2 = -3
    assert rep.witness[:2] == (0, 1) and rep.witness[2] == -3
    assert rep.to_json()["witness"]["x"] == 0


def test_residual_eq2_examples(z3_neg, z3_chars):
    _, c1, c2 = z3_chars
    g = (c1 + c2) / 2
    assert residual_eq2(z3_neg.zero(), c1, z3_neg).is_zero
    assert residual_eq2(g, g, z3_neg).is_zero
    assert not residual_eq2(c1, c1, z3_neg).is_zero


def test_residual_dalembert_examples(z3_neg, z3_chars):
    _, c1, c2 = z3_chars
    assert residual_dalembert_variant(z3_neg.zero(), z3_neg).is_zero
    for m in enumerate_multiplicative(z3_neg.S, z3_neg.field):
        assert residual_dalembert_variant(make_dalembert(m, z3_neg), z3_neg).is_zero
    assert not residual_dalembert_variant(c1 + c2, z3_neg).is_zero
    assert residual(DALEMBERT, None, (c1 + c2) / 2, z3_neg).is_zero


def test_residual_mu_dalembert(z3, z3_neg, z3_chars):
    _, c1, c2 = z3_chars
    assert residual_mu_dalembert(z3_neg.zero(), z3_neg).is_zero
    g = (c1 + c2) / 2
    assert is_central(g, z3)
    assert residual_mu_dalembert(g, z3_neg).is_zero
    # sigma = id, mu = chi1 is outside the blanket assumption; only the report is asked for
    ctx = StructureInstance(z3, None, c1, z3_neg.field, check=False)
    rep = residual_mu_dalembert(c1, ctx)
    assert not rep.is_zero and rep.max_violations > 0


def test_make_dalembert_examples(z3_neg, z3_chars):
    c0, c1, c2 = z3_chars
    assert make_dalembert(z3_neg.zero(), z3_neg).is_zero()
    assert make_dalembert(c1, z3_neg) == (c1 + c2) / 2
    assert make_dalembert(c0, z3_neg) == c0
    with pytest.raises(FamilyPreconditionError):
        make_dalembert(SFunc([1, 2, 3], z3_neg.field), z3_neg)


def test_make_family2_examples(z3_neg, z3_chars):
    c0, c1, _ = z3_chars
    f, g = make_family2(c0, 1, 0, z3_neg)
    assert f == c0 and g == c0
    f, g = make_family2(c1, 2, 3, z3_neg)
    assert residual_eq1(f, g, z3_neg).is_zero
    with pytest.raises(FamilyPreconditionError) as info:
        make_family2(c1, 0, 0, z3_neg)
    assert info.value.kind == "params_zero"
    with pytest.raises(FamilyPreconditionError) as info:
        make_family2(z3_neg.zero(), 1, 1, z3_neg)
    assert info.value.kind == "chi_zero"


def test_make_eq2_family2_examples(mult01_ctx, z3_neg, z3_chars):
    fld = mult01_ctx.field
    one = SFunc.constant(fld, 2, 1)
    f, g = make_eq2_family2(one, 1, mult01_ctx)
    assert f == one and g == one
    _, c1, _ = z3_chars
    f, g = make_eq2_family2(c1, 3, z3_neg)
    assert residual_eq2(f, g, z3_neg).is_zero
    with pytest.raises(FamilyPreconditionError):
        make_eq2_family2(c1, 0, z3_neg)


def test_eq2_family2_degenerate_overlap(z3_neg):
    f, g = make_eq2_family2(z3_neg.zero(), 5, z3_neg)
    assert f.is_zero() and g.is_zero()
    assert residual_eq2(f, g, z3_neg).is_zero


def test_odd_characters_vanish_on_finite_semigroups():
    # mu = 1 on idempotents, so chi + chi* = 0 kills chi on every idempotent power
    for n in (1, 2, 3):
        for S in enumerate_semigroups(n):
            if not is_square_generated(S)[0]:
                continue
            fld = field(conductor_for(S))
            chars = enumerate_multiplicative(S, fld)
            for sigma in enumerate_involutive_automorphisms(S):
                for mu in enumerate_mu(S, sigma, fld):
                    ctx = StructureInstance(S, sigma, mu, fld)
                    for chi in chars:
                        if (chi + star(chi, ctx)).is_zero():
                            assert chi.is_zero()


def test_make_family3_finite_refuses(z3_neg, z3_chars, mult01_ctx):
    c0 = z3_chars[0]
    with pytest.raises(FamilyPreconditionError) as info:
        make_family3(c0, 1, z3_neg.zero(), z3_neg)
    assert info.value.kind == "A_zero"
    ind1 = SFunc([0, 1], mult01_ctx.field)
    A = SFunc([0, 0], mult01_ctx.field, mask=[False, True])
    with pytest.raises(FamilyPreconditionError) as info:
        make_family3(ind1, 2, A, mult01_ctx)
    assert info.value.kind == "A_zero"
    with pytest.raises(FamilyPreconditionError) as info:
        make_family3(z3_chars[1], 1, z3_neg.zero(), z3_neg)
    assert info.value.kind == "chi_not_even"


def test_make_family3_qspace_dispatch():
    ctx = qspace.QVecSemigroup(2, [[0, 1], [1, 0]])
    chi = ctx.form([1, 2])
    f, g = make_family3(chi, 5, ctx.form([1, -1]), ctx)
    assert g == qspace.make_char(chi, ctx)
    with pytest.raises(FamilyPreconditionError) as info:
        make_family3(chi, 5, ctx.form([1, 1]), ctx)
    assert info.value.kind == "A_not_odd"


def _tags(fams):
    return [(f.tag, None if f.chi is None else tuple(f.chi)) for f in fams]


def test_classify_eq1_examples(mult01_ctx, z3_neg, z3_chars, trivial):
    fld = mult01_ctx.field
    fams = classify_eq1(mult01_ctx)
    assert [f.tag for f in fams] == ["EQ1_F1", "EQ1_F2", "EQ1_F2"]
    assert {tuple(f.chi) for f in fams[1:]} == {tuple(SFunc([1, 1], fld)), tuple(SFunc([0, 1], fld))}

    c0, c1, c2 = z3_chars
    fams = classify_eq1(z3_neg)
    assert [f.tag for f in fams] == ["EQ1_F1", "EQ1_F2", "EQ1_F2"]
    chis = {f.chi for f in fams[1:]}
    assert c0 in chis and len(chis & {c1, c2}) == 1

    one = StructureInstance(trivial)
    fams = classify_eq1(one)
    assert [f.tag for f in fams] == ["EQ1_F1", "EQ1_F2"]
    assert fams[1].chi == SFunc([1], one.field)
    assert fams[0].to_json()["I_chi"] == "I_chi := chi^-1(0)"


def test_classify_eq2_examples(mult01_ctx, z3_neg, trivial):
    assert [f.tag for f in classify_eq2(mult01_ctx)] == ["EQ2_F1", "EQ2_F2", "EQ2_F2"]
    assert [f.tag for f in classify_eq2(z3_neg)] == ["EQ2_F1", "EQ2_F2", "EQ2_F2"]
    assert [f.tag for f in classify_eq2(StructureInstance(trivial))] == ["EQ2_F1", "EQ2_F2"]


def test_sine_addition_examples(z3_neg, z3_chars):
    _, c1, c2 = z3_chars
    g = (c1 + c2) / 2
    for a in range(3):
        assert sine_addition_check(z3_neg.zero(), g, a, z3_neg).is_zero
    f, g = make_family2(c1, 2, -1, z3_neg)
    for a in range(3):
        assert sine_addition_check(f, g, a, z3_neg).is_zero
    with pytest.raises(PreconditionError):
        sine_addition_check(c1, z3_chars[0], 0, z3_neg)


def test_residual_dispatch(z3_neg, z3_chars):
    _, c1, c2 = z3_chars
    g = (c1 + c2) / 2
    assert residual(EQ1, c1, g, z3_neg).is_zero
    assert residual(EQ2, g, g, z3_neg).is_zero
    with pytest.raises(ValueError):
        residual("eq9", c1, g, z3_neg)
