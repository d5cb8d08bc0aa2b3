"""Loop builders, exhaustive small-order generation, and catalog loading.

``all_loops`` is the project-wide oracle: it streams every loop of a
given order exactly once, in lexicographic order of the flattened table,
by row-by-row backtracking over column bitmasks.  "First loop of order n"
anywhere in the test suite refers to this ordering.  No isomorph
rejection is attempted; everything verified downstream is isomorphism
invariant, so duplicate copies only cost time at desk scale.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import LoopError, LoopTable, NoIdentityError
from .identities import holds

__all__ = [
    "OrderTooLargeError",
    "cyclic",
    "direct_product",
    "dihedral",
    "quaternion",
    "abelian_groups_up_to",
    "commutative_isotope",
    "IsotopeResult",
    "all_loops",
    "all_commutative_loops",
    "commutative_ip_loops",
    "filter_by",
    "load_catalog",
    "LOOP_COUNTS",
    "COMMUTATIVE_LOOP_COUNTS",
    "COMMUTATIVE_IP_LOOP_COUNTS",
]

MAX_GENERATOR_ORDER = 8

# regression constants, frozen from the first verified generator runs
LOOP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 4, 5: 56, 6: 9408}
COMMUTATIVE_LOOP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 4, 5: 6, 6: 456, 7: 6240, 8: 10936320}
COMMUTATIVE_IP_LOOP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 4, 5: 6, 6: 60, 7: 120, 8: 1920}


class OrderTooLargeError(LoopError):
    def __init__(self, n: int):
        super().__init__(f"exhaustive generation is capped at order {MAX_GENERATOR_ORDER}, got {n}")
        self.n = n


# -- builders ---------------------------------------------------------------


def cyclic(n: int) -> LoopTable:
    """The cyclic group Z_n as a table."""
    return LoopTable([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(L1: LoopTable, L2: LoopTable) -> LoopTable:
    """Componentwise product on pairs, encoded as a*n2 + b."""
    n1, n2 = L1.n, L2.n
    t1, t2 = L1.table, L2.table
    n = n1 * n2
    rows = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            ra = a1 * n2 + a2
            for b1 in range(n1):
                for b2 in range(n2):
                    rows[ra][b1 * n2 + b2] = t1[a1][b1] * n2 + t2[a2][b2]
    return LoopTable(rows)


def dihedral(m: int) -> LoopTable:
    """The dihedral group of order 2m; dihedral(3) is S3."""
    n = 2 * m

    def mul(a, b):
        i, e = a % m, a // m
        j, f = b % m, b // m
        k = (i + j) % m if e == 0 else (i - j) % m
        return (e ^ f) * m + k

    return LoopTable([[mul(a, b) for b in range(n)] for a in range(n)])


def quaternion() -> LoopTable:
    """The quaternion group of order 8 (elements a^i b^j, b^2 = a^2)."""

    def mul(x, y):
        i, j = x % 4, x // 4
        k, l = y % 4, y // 4
        if j == 0:
            return l * 4 + (i + k) % 4
        if l == 0:
            return 4 + (i - k) % 4
        return (i - k + 2) % 4

    return LoopTable([[mul(a, b) for b in range(8)] for a in range(8)])


def abelian_groups_up_to(max_order: int) -> list:
    """(name, table) for every abelian group of order <= max_order."""
    out = []
    for n in range(1, max_order + 1):
        out.append((f"Z{n}", cyclic(n)))
    extras = {
        4: [("Z2xZ2", ("Z2", "Z2"))],
        8: [("Z4xZ2", ("Z4", "Z2")), ("Z2xZ2xZ2", ("Z2", "Z2", "Z2"))],
        9: [("Z3xZ3", ("Z3", "Z3"))],
        12: [("Z6xZ2", ("Z6", "Z2"))],
    }
    for order, combos in extras.items():
        if order > max_order:
            continue
        for name, parts in combos:
            table = cyclic(int(parts[0][1:]))
            for p in parts[1:]:
                table = direct_product(table, cyclic(int(p[1:])))
            out.append((name, table))
    return out


# -- the twisted commutative isotope -------------------------------------------


@dataclass(frozen=True)
class IsotopeResult:
    """The table of x o y = x^{-1} \\ y, plus its loop form when it has one.

    On a loop with two-sided inverses the twisted table is always a
    quasigroup; ``loop`` is None in the (defensive) case that element 0
    fails to be a two-sided identity for it.
    """

    table: tuple
    loop: LoopTable | None

    @property
    def is_loop(self) -> bool:
        return self.loop is not None


def commutative_isotope(L: LoopTable) -> IsotopeResult:
    """Twist the operation to x o y = x^{-1} \\ y.

    The twisted operation is commutative exactly when the original loop
    has the weak commutative inverse property.  Raises
    :class:`NotTwoSidedError` when L lacks two-sided inverses.
    """
    inv = [L.inverse(a) for a in range(L.n)]
    rows = tuple(tuple(L._ldiv[inv[x]][y] for y in range(L.n)) for x in range(L.n))
    try:
        return IsotopeResult(rows, LoopTable(rows))
    except NoIdentityError:
        return IsotopeResult(rows, None)


# -- exhaustive generation -------------------------------------------------------


def all_loops(n: int):
    """Stream every loop of order n, lexicographically, each exactly once.

    Backtracking fills rows 1..n-1 left to right; candidates per cell are
    the symbols unused in the row and column so far, tried in ascending
    order.  Capped at order 8.
    """
    if not 1 <= n <= MAX_GENERATOR_ORDER:
        raise OrderTooLargeError(n)
    if n == 1:
        yield LoopTable([[0]])
        return
    full = (1 << n) - 1
    grid = [list(range(n))] + [[0] * n for _ in range(n - 1)]
    for r in range(1, n):
        grid[r][0] = r
    # col_mask[j]: symbols already used in column j (row 0 contributes j)
    col_mask = [0] * n
    for j in range(n):
        col_mask[j] = 1 << j

    def fill(r, j, row_mask):
        if j == n:
            if r == n - 1:
                yield LoopTable([row[:] for row in grid])
            else:
                yield from fill(r + 1, 1, 1 << (r + 1))
            return
        avail = full & ~(row_mask | col_mask[j])
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            grid[r][j] = v
            col_mask[j] |= bit
            yield from fill(r, j + 1, row_mask | bit)
            col_mask[j] ^= bit

    yield from fill(1, 1, 1 << 1)


def all_commutative_loops(n: int):
    """Stream every commutative loop of order n by symmetric backtracking.

    Fills only cells (r, c) with r <= c and mirrors; the row mask of
    index k doubles as its column mask since the table stays symmetric.
    Same lexicographic order and order-8 cap as :func:`all_loops`.
    """
    if not 1 <= n <= MAX_GENERATOR_ORDER:
        raise OrderTooLargeError(n)
    if n == 1:
        yield LoopTable([[0]])
        return
    full = (1 << n) - 1
    grid = [list(range(n))] + [[0] * n for _ in range(n - 1)]
    for r in range(1, n):
        grid[r][0] = r
        grid[0][r] = r
    used = [1 << k for k in range(n)]
    cells = [(r, c) for r in range(1, n) for c in range(r, n)]

    def fill(i):
        if i == len(cells):
            yield LoopTable([row[:] for row in grid])
            return
        r, c = cells[i]
        avail = full & ~(used[r] | used[c])
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            grid[r][c] = v
            grid[c][r] = v
            used[r] |= bit
            if c != r:
                used[c] |= bit
            yield from fill(i + 1)
            used[r] ^= bit
            if c != r:
                used[c] ^= bit

    yield from fill(0)


def commutative_ip_loops(n: int):
    """Stream every commutative inverse property loop of order n.

    Same output as filtering :func:`all_commutative_loops` by the inverse
    property, but the x^{-1}(x*y) = y instances are enforced inside the
    backtracking whenever all three lookups are already decided, which
    cuts the order-8 search from minutes to seconds.  In a commutative
    table inverses are two-sided and read off the zeros, so inv[] can be
    maintained cell by cell.
    """
    if not 1 <= n <= MAX_GENERATOR_ORDER:
        raise OrderTooLargeError(n)
    if n == 1:
        yield LoopTable([[0]])
        return
    full = (1 << n) - 1
    grid = [list(range(n))] + [[0] * n for _ in range(n - 1)]
    for r in range(1, n):
        grid[r][0] = r
        grid[0][r] = r
    used = [1 << k for k in range(n)]
    inv = [-1] * n
    inv[0] = 0
    cells = [(r, c) for r in range(1, n) for c in range(r, n)]
    row_done = {i: r for i, (r, c) in enumerate(cells) if c == n - 1}

    def ip_ok(r):
        # entry (x, y) is current iff min(x, y) <= r; inv entries are
        # maintained exactly, so an instance is checkable when all three
        # lookups land on current cells
        for x in range(n):
            ix = inv[x]
            if ix < 0:
                continue
            gx = grid[x]
            gi = grid[ix]
            for y in range(n):
                if x > r and y > r:
                    continue
                z = gx[y]
                if ix > r and z > r:
                    continue
                if gi[z] != y:
                    return False
        return True

    def fill(i):
        if i == len(cells):
            yield LoopTable([row[:] for row in grid])
            return
        r, c = cells[i]
        avail = full & ~(used[r] | used[c])
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            grid[r][c] = v
            grid[c][r] = v
            used[r] |= bit
            if c != r:
                used[c] |= bit
            learned_inv = v == 0
            if learned_inv:
                inv[r] = c
                inv[c] = r
            if i not in row_done or ip_ok(row_done[i]):
                yield from fill(i + 1)
            if learned_inv:
                inv[r] = -1
                if c != r:
                    inv[c] = -1
            used[r] ^= bit
            if c != r:
                used[c] ^= bit

    yield from fill(0)


def filter_by(loops, identities):
    """Lazily keep the loops on which every identity holds.

    A loop without two-sided inverses cannot satisfy any identity that
    mentions inversion, so those are dropped rather than raised on.
    """
    identities = tuple(identities)
    for L in loops:
        if all(holds(L, ident) for ident in identities):
            yield L


# -- catalog ---------------------------------------------------------------------


def load_catalog(directory) -> list:
    """Recursively load every .tbl file under a directory.

    Returns (id, LoopTable) pairs sorted by relative path; the id is the
    path without its extension.
    """
    from .core import load

    out = []
    for root, dirs, files in os.walk(directory):
        dirs.sort()
        for fname in sorted(files):
            if not fname.endswith(".tbl"):
                continue
            path = os.path.join(root, fname)
            rel = os.path.relpath(path, directory)
            out.append((rel[: -len(".tbl")], load(path)))
    out.sort(key=lambda pair: pair[0])
    return out
