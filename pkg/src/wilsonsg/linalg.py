"""Exact Gaussian elimination over any field whose elements support + - * /.

Zero tests use truthiness, so both :class:`fractions.Fraction` and
:class:`~wilsonsg.scalar.Cyclotomic` work.  Pivoting is "first nonzero
entry"; over an exact field no other strategy is needed.
"""

from __future__ import annotations

from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    seen = set()
    work = []
    for r in rows:
        key = tuple(r)
        if key in seen or not any(key):
            continue
        seen.add(key)
        work.append(list(key))
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        if prow == len(work):
            break
        for i in range(prow, len(work)):
            if work[i][col]:
                break
        else:
            continue
        work[prow], work[i] = work[i], work[prow]
        piv = work[prow]
        inv = piv[col].inverse() if hasattr(piv[col], "inverse") else 1 / piv[col]
        for c in range(col, ncols):
            if piv[c]:
                piv[c] = piv[c] * inv
        for i, row in enumerate(work):
            if i == prow:
                continue
            factor = row[col]
            if factor:
                for c in range(col, ncols):
                    pc = piv[c]
                    if pc:
                        row[c] = row[c] - factor * pc
        pivots.append(col)
        prow += 1
    return work[:prow], pivots


def nullspace(rows: Sequence[Sequence], ncols: int, one) -> list[list]:
    """Basis of {v : row . v = 0 for every row}, one vector per free column."""
    zero = one * 0
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, p in zip(red, pivots):
            if row[free]:
                v[p] = -row[free]
        basis.append(v)
    return basis


def rank(vectors: Sequence[Sequence], ncols: int) -> int:
    return len(rref(vectors, ncols)[1])


def in_span(basis: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    return rank(list(basis) + [v], ncols) == rank(basis, ncols)


def span_contains(big: Sequence[Sequence], small: Sequence[Sequence], ncols: int) -> bool:
    r = rank(big, ncols)
    return rank(list(big) + list(small), ncols) == r


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    """Subspace equality by mutual membership."""
    return span_contains(a, b, ncols) and span_contains(b, a, ncols)


def reduced_basis(vectors: Sequence[Sequence], ncols: int) -> list[list]:
    """Canonical basis of the span (the nonzero RREF rows)."""
    return rref(vectors, ncols)[0]
