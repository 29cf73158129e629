from __future__ import annotations

import json

import pytest

from wilsonsg.census import census_verify, verify_table
from wilsonsg.semigroup import OrderBoundExceeded, cyclic_group, validate


@pytest.fixture(scope="module")
def census3():
    return census_verify(3, seed=0)


def test_order2_counts():
    rep = census_verify(2, seed=0)
    assert rep.scanned(1) == 1 and rep.scanned(2) == 8
    assert rep.failure_count == 0


def test_order3_counts(census3):
    assert census3.scanned(3) == 113
    assert census3.per_order[3]["square_generated"] == 38
    assert census3.failure_count == 0


def test_order3_dimensions(census3):
    dims = census3.per_order[3]["dimensions"]
    # only the expected (category, dimension) pairs ever occur
    allowed = {
        "eq1": {"zero": 0, "split": 2, "even": 1, "nonfamily": 0},
        "eq2": {"zero": 0, "split": 1, "even": 1, "nonfamily": 0},
    }
    for key in dims:
        _, eq, cat, dim = key.split(".")
        assert allowed[eq][cat] == int(dim), key
    assert dims["dim.eq1.split.2"] > 0


def test_order3_checks_cover_every_family(census3):
    checks = census3.per_order[3]["checks"]
    for name in ("lemma31", "lemma32", "lemma33", "lemma41", "sine_addition", "family3_obstruction",
                 "eq1_family2_residual", "eq2_family2_residual", "dalembert_residual", "additive_space_zero"):
        assert checks[f"{name}.checks"] > 0, name
        assert checks.get(f"{name}.failures", 0) == 0, name


def test_parallel_matches_serial():
    a = census_verify(2, seed=5, random_g_count=3, jobs=1)
    b = census_verify(2, seed=5, random_g_count=3, jobs=2)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


def test_order_cap():
    with pytest.raises(OrderBoundExceeded):
        census_verify(9)
    with pytest.raises(OrderBoundExceeded):
        census_verify(0)


def test_verify_table_skips_non_square_generated():
    res = verify_table(validate([[1, 1], [1, 1]]), 0, seed=0)
    assert not res.square_generated and not res.counts


def test_verify_table_z5():
    # Z/5 lies beyond the census orders; Q(zeta_10) has degree 4
    res = verify_table(cyclic_group(5), 0, seed=1, random_g_count=5, grid_max_order=0)
    assert res.square_generated and res.failures == []
    assert res.counts["instances"] == 6
    assert res.counts["dim.eq1.split.2"] == 10
