"""Finite semigroups given by Cayley tables."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterator

DEFAULT_MAX_ORDER = 4
HARD_MAX_ORDER = 5


class SemigroupError(ValueError):
    pass


class IndexOutOfRange(SemigroupError):
    def __init__(self, x: int, y: int, value):
        super().__init__(f"entry ({x},{y}) = {value!r} is not an element index")
        self.cell = (x, y)
        self.value = value


class AssocFail(SemigroupError):
    def __init__(self, x: int, y: int, z: int, left: int, right: int):
        super().__init__(f"(x*y)*z != x*(y*z) at (x,y,z)=({x},{y},{z}): {left} != {right}")
        self.triple = (x, y, z)
        self.left = left
        self.right = right


class OrderBoundExceeded(SemigroupError):
    pass


class CayleyTable:
    """An associative composition on {0, ..., n-1}; construct via :func:`validate`."""

    __slots__ = ("order", "table", "_hash")

    def __init__(self, table):
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in table)
        self.order: int = len(self.table)
        self._hash = hash(self.table)

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    def __getitem__(self, x: int) -> tuple[int, ...]:
        return self.table[x]

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, CayleyTable) and self.table == other.table

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CayleyTable({[list(r) for r in self.table]})"

    @property
    def elements(self) -> range:
        return range(self.order)

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[x][y] == t[y][x] for x in self.elements for y in self.elements)

    def products(self) -> set[int]:
        """S*S."""
        return {v for row in self.table for v in row}

    def triple_products(self) -> set[int]:
        """S*S*S."""
        t = self.table
        ss = self.products()
        return {t[a][z] for a in ss for z in self.elements}

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}

    def to_text(self) -> str:
        lines = [f"order {self.order}"]
        lines += [" ".join(map(str, row)) for row in self.table]
        return "\n".join(lines) + "\n"


def validate(table) -> CayleyTable:
    """Check shape, index range and associativity over all n^3 triples."""
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise SemigroupError("empty table")
    for x, row in enumerate(rows):
        if len(row) != n:
            raise SemigroupError(f"row {x} has length {len(row)}, expected {n}")
        for y, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise IndexOutOfRange(x, y, v)
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            xy = rx[y]
            rxy, ry = rows[xy], rows[y]
            for z in range(n):
                left = rxy[z]
                right = rx[ry[z]]
                if left != right:
                    raise AssocFail(x, y, z, left, right)
    return CayleyTable(rows)


def is_associative(table) -> bool:
    try:
        validate(table)
    except SemigroupError:
        return False
    return True


def square_closure(S: CayleyTable) -> set[int]:
    """Subsemigroup generated by {x*x}, via a worklist."""
    t = S.table
    gen = {t[x][x] for x in S.elements}
    closed = set(gen)
    work = list(closed)
    while work:
        a = work.pop()
        for b in list(closed):
            for c in (t[a][b], t[b][a]):
                if c not in closed:
                    closed.add(c)
                    work.append(c)
    return closed


def is_square_generated(S: CayleyTable) -> tuple[bool, frozenset[int]]:
    closed = square_closure(S)
    return len(closed) == S.order, frozenset(closed)


def is_automorphism(S: CayleyTable, perm) -> bool:
    t = S.table
    n = S.order
    if sorted(perm) != list(range(n)):
        return False
    return all(perm[t[x][y]] == t[perm[x]][perm[y]] for x in range(n) for y in range(n))


def is_involutive_automorphism(S: CayleyTable, perm) -> bool:
    return is_automorphism(S, perm) and all(perm[perm[x]] == x for x in S.elements)


def is_homomorphism(S: CayleyTable, phi) -> bool:
    t = S.table
    n = S.order
    return len(phi) == n and all(
        0 <= phi[x] < n and phi[t[x][y]] == t[phi[x]][phi[y]] for x in range(n) for y in range(n)
    )


def _involutions(n: int) -> Iterator[tuple[int, ...]]:
    # all permutations p with p[p[x]] == x, in lexicographic order
    perm = [-1] * n

    def rec(i: int):
        while i < n and perm[i] != -1:
            i += 1
        if i == n:
            yield tuple(perm)
            return
        for j in range(i, n):
            if perm[j] != -1:
                continue
            perm[i], perm[j] = j, i
            yield from rec(i + 1)
            perm[i] = perm[j] = -1

    yield from rec(0)


def enumerate_involutive_automorphisms(S: CayleyTable) -> list[tuple[int, ...]]:
    return sorted(p for p in _involutions(S.order) if is_automorphism(S, p))


def enumerate_endomorphisms(S: CayleyTable) -> list[tuple[int, ...]]:
    """All homomorphisms S -> S (brute force; intended for tiny orders)."""
    from itertools import product

    return [phi for phi in product(S.elements, repeat=S.order) if is_homomorphism(S, phi)]


@dataclass(frozen=True)
class MonogenicData:
    element: int
    index_i: int
    period_p: int


def monogenic_data(S: CayleyTable, x: int) -> MonogenicData:
    """Minimal (i, p) with x^(i+p) = x^i."""
    t = S.table
    seen: dict[int, int] = {}
    power, k = x, 1
    while power not in seen:
        seen[power] = k
        power = t[power][x]
        k += 1
    i = seen[power]
    return MonogenicData(x, i, k - i)


def period_lcm(S: CayleyTable) -> int:
    return lcm(*(monogenic_data(S, x).period_p for x in S.elements))


def conductor_for(S: CayleyTable) -> int:
    """Session conductor: twice the lcm of all element periods."""
    return 2 * period_lcm(S)


def enumerate_semigroups(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Iterator[CayleyTable]:
    """All labeled associative n x n tables, lexicographic in row-major order.

    Cells are filled row by row; after each assignment every associativity
    triple whose four lookups are already defined is rechecked.
    """
    if max_order > HARD_MAX_ORDER:
        raise OrderBoundExceeded(f"configured bound {max_order} exceeds hard cap {HARD_MAX_ORDER}")
    if n < 1 or n > max_order:
        raise OrderBoundExceeded(f"order {n} outside 1..{max_order}")
    t = [[-1] * n for _ in range(n)]
    cells = [(a, b) for a in range(n) for b in range(n)]
    rng = range(n)

    def consistent(a: int, b: int) -> bool:
        v = t[a][b]
        # (a*b)*z == a*(b*z)
        for z in rng:
            l = t[v][z]
            bz = t[b][z]
            if l >= 0 and bz >= 0:
                r = t[a][bz]
                if r >= 0 and r != l:
                    return False
        # (x*a)*b == x*(a*b)
        for x in rng:
            xa = t[x][a]
            if xa >= 0:
                l = t[xa][b]
                r = t[x][v]
                if l >= 0 and r >= 0 and l != r:
                    return False
        # cell (a,b) as the outer lookup: (x*y)=a with z=b, or y*z=b with x=a
        for x in rng:
            tx = t[x]
            for y in rng:
                xy = tx[y]
                if xy == a:
                    yb = t[y][b]
                    if yb >= 0:
                        r = tx[yb]
                        if r >= 0 and r != v:
                            return False
                if xy == b:
                    # a*(x*y) == (a*x)*y
                    ax = t[a][x]
                    if ax >= 0:
                        l = t[ax][y]
                        if l >= 0 and l != v:
                            return False
        return True

    def rec(k: int):
        if k == len(cells):
            yield CayleyTable(t)
            return
        a, b = cells[k]
        for v in rng:
            t[a][b] = v
            if consistent(a, b):
                yield from rec(k + 1)
        t[a][b] = -1

    yield from rec(0)


def naive_enumerate_semigroups(n: int) -> Iterator[CayleyTable]:
    """Brute force over all n^(n*n) tables; usable up to n = 3."""
    from itertools import product

    for flat in product(range(n), repeat=n * n):
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
        if is_associative(rows):
            yield CayleyTable(rows)


def cyclic_group(n: int) -> CayleyTable:
    return validate([[(x + y) % n for y in range(n)] for x in range(n)])


def parse_text(text: str) -> list[list[int]]:
    """Parse the text format (``order n`` then n rows of n indices) into raw rows.

    ``#`` starts a comment running to the end of the line.
    """
    lines = [(i + 1, ln.split("#", 1)[0]) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln.strip()]
    if not lines:
        raise ParseError("empty input", 1, 1)
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "order":
        raise ParseError("expected 'order n'", lineno, 1)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"bad order {parts[1]!r}", lineno, head.index(parts[1]) + 1) from None
    if n < 1:
        raise ParseError("order must be positive", lineno, head.index(parts[1]) + 1)
    body = lines[1:]
    if len(body) != n:
        ln = body[-1][0] + 1 if body else lineno + 1
        raise ParseError(f"expected {n} table rows, found {len(body)}", ln, 1)
    rows = []
    for lineno, ln in body:
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno, 1)
        row = []
        col = 0
        for tok in toks:
            col = ln.index(tok, col)
            try:
                row.append(int(tok))
            except ValueError:
                raise ParseError(f"bad entry {tok!r}", lineno, col + 1) from None
            col += len(tok)
        rows.append(row)
    return rows


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column
