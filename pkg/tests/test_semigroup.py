from __future__ import annotations

import itertools
import random

import pytest

from wilsonsg.semigroup import (
    HARD_MAX_ORDER,
    AssocFail,
    IndexOutOfRange,
    OrderBoundExceeded,
    ParseError,
    conductor_for,
    cyclic_group,
    enumerate_endomorphisms,
    enumerate_involutive_automorphisms,
    enumerate_semigroups,
    is_associative,
    is_square_generated,
    monogenic_data,
    naive_enumerate_semigroups,
    parse_text,
    validate,
)


def test_validate_examples(z3):
    assert validate([[0, 0], [0, 1]]).order == 2
    assert z3.order == 3
    with pytest.raises(AssocFail) as info:
        validate([[1, 0], [0, 0]])
    x, y, z = info.value.triple
    t = [[1, 0], [0, 0]]
    assert t[t[x][y]][z] != t[x][t[y][z]]


def test_validate_rejects_bad_shapes():
    with pytest.raises(IndexOutOfRange):
        validate([[0, 2], [0, 1]])
    with pytest.raises(Exception):
        validate([[0, 0], [0]])


def test_square_generated_examples(trivial, z3):
    assert is_square_generated(trivial)[0]
    ok, closure = is_square_generated(z3)
    assert ok and closure == {0, 1, 2}
    ok, closure = is_square_generated(validate([[1, 1], [1, 1]]))
    assert not ok and closure == {1}


def test_involutive_automorphisms_examples(z3, mult01, trivial):
    assert enumerate_involutive_automorphisms(z3) == [(0, 1, 2), (0, 2, 1)]
    assert enumerate_involutive_automorphisms(mult01) == [(0, 1)]
    assert enumerate_involutive_automorphisms(trivial) == [(0,)]


def test_endomorphisms_contain_automorphisms(z3):
    endo = enumerate_endomorphisms(z3)
    assert set(enumerate_involutive_automorphisms(z3)) <= set(endo)
    assert (0, 0, 0) in endo


def test_monogenic_examples(z3, mult01):
    d = monogenic_data(z3, 1)
    assert (d.index_i, d.period_p) == (1, 3)
    d = monogenic_data(mult01, 0)
    assert (d.index_i, d.period_p) == (1, 1)
    d = monogenic_data(mult01, 1)
    assert (d.index_i, d.period_p) == (1, 1)
    # nilpotent-then-cycle: x=1 in {0,1} with 1*1 = 0, 0*0 = 0
    null = validate([[0, 0], [0, 0]])
    d = monogenic_data(null, 1)
    assert (d.index_i, d.period_p) == (2, 1)


def test_conductor(z3, mult01):
    assert conductor_for(z3) == 6
    assert conductor_for(mult01) == 2


@pytest.mark.parametrize("n, count", [(1, 1), (2, 8), (3, 113)])
def test_enumeration_matches_naive_scan(n, count):
    fast = [s.table for s in enumerate_semigroups(n)]
    naive = [s.table for s in naive_enumerate_semigroups(n)]
    assert len(fast) == count
    assert sorted(fast) == sorted(naive)
    assert len(set(fast)) == count


def test_order4_sample_is_associative():
    tables = list(enumerate_semigroups(4))
    assert len(tables) == 3492
    rng = random.Random(4)
    for S in rng.sample(tables, 200):
        assert is_associative(S.table)


def test_order4_includes_known_tables():
    tables = {S.table for S in enumerate_semigroups(4)}
    assert cyclic_group(4).table in tables
    assert tuple(tuple(0 for _ in range(4)) for _ in range(4)) in tables


def test_order_cap():
    with pytest.raises(OrderBoundExceeded):
        next(enumerate_semigroups(HARD_MAX_ORDER + 1, max_order=9))
    with pytest.raises(OrderBoundExceeded):
        next(enumerate_semigroups(5))


def test_parse_text():
    rows = parse_text("# comment\norder 2\n0 0\n0 1\n")
    assert rows == [[0, 0], [0, 1]]
    with pytest.raises(ParseError) as info:
        parse_text("order 2\n0 0\n0 x\n")
    assert info.value.line == 3


def test_table_helpers(z3):
    assert z3.is_commutative()
    assert z3.products() == {0, 1, 2}
    assert z3.triple_products() == {0, 1, 2}
    assert validate(z3.to_json()["table"]) == z3
    left_zero = validate([[0, 0], [1, 1]])
    assert not left_zero.is_commutative()


def test_is_associative_brute_force_agreement():
    for cells in itertools.product(range(2), repeat=4):
        t = [list(cells[:2]), list(cells[2:])]
        brute = all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(2) for b in range(2) for c in range(2))
        assert is_associative(t) == brute
