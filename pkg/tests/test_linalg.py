from __future__ import annotations

from fractions import Fraction as Q

from wilsonsg import linalg
from wilsonsg.scalar import field


def test_nullspace_rationals():
    rows = [[Q(1), Q(2), Q(3)], [Q(2), Q(4), Q(6)], [Q(1), Q(0), Q(1)]]
    basis = linalg.nullspace(rows, 3, Q(1))
    assert len(basis) == 1
    v = basis[0]
    assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in rows)


def test_rank_and_span():
    a = [[Q(1), Q(0)], [Q(0), Q(1)]]
    b = [[Q(1), Q(1)], [Q(1), Q(-1)]]
    assert linalg.rank(a, 2) == 2
    assert linalg.same_span(a, b, 2)
    assert not linalg.same_span(a, [[Q(1), Q(1)]], 2)
    assert linalg.in_span([[Q(1), Q(1)]], [Q(3), Q(3)], 2)
    assert linalg.same_span([], [], 2)


def test_cyclotomic_entries():
    F = field(3)
    w = F.z_power(1)
    rows = [[F.one, w], [w, w * w]]  # second row is w times the first
    basis = linalg.nullspace(rows, 2, F.one)
    assert len(basis) == 1
    v = basis[0]
    assert rows[0][0] * v[0] + rows[0][1] * v[1] == 0


def test_rref_drops_duplicates_and_zero_rows():
    rows = [[Q(0), Q(0)], [Q(2), Q(4)], [Q(1), Q(2)]]
    red, piv = linalg.rref(rows, 2)
    assert piv == [0]
    assert red == [[Q(1), Q(2)]]


def test_reduced_basis_is_canonical():
    a = linalg.reduced_basis([[Q(2), Q(2)], [Q(1), Q(-1)]], 2)
    b = linalg.reduced_basis([[Q(1), Q(0)], [Q(0), Q(5)]], 2)
    assert a == b
