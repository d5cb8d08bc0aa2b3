"""Finite loops as validated Cayley tables on {0, ..., n-1}.

Element 0 is always the identity and rows index the left factor, so
``table[a][b] == a*b``.  Both division tables are precomputed once at
validation time; the backtracking searches elsewhere in the package rely
on divisions being O(1) lookups.  Tables and permutations are immutable
after construction and all operations are pure, so instances can be
shared freely across threads or worker processes.
"""

from __future__ import annotations

__all__ = [
    "LoopError",
    "NotLatinError",
    "NoIdentityError",
    "NotTwoSidedError",
    "FormatError",
    "Permutation",
    "LoopTable",
    "validate",
    "relabel",
    "load",
    "loads",
    "save",
    "dumps",
]


class LoopError(Exception):
    """Base class for every error this package raises deliberately."""


class NotLatinError(LoopError):
    """A row or column of the table repeats a symbol."""

    def __init__(self, axis: str, index: int, symbol: int):
        super().__init__(f"{axis} {index} repeats symbol {symbol}")
        self.axis = axis
        self.index = index
        self.symbol = symbol


class NoIdentityError(LoopError):
    """Row 0 or column 0 is not the identity permutation."""


class NotTwoSidedError(LoopError):
    """Raised for an element whose left and right inverses differ."""

    def __init__(self, element: int):
        super().__init__(f"element {element} has no two-sided inverse")
        self.element = element


class FormatError(LoopError):
    """Malformed Cayley-table text."""

    def __init__(self, message: str, path: str = "<string>", line: int = 0):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class Permutation:
    """A bijection on {0..n-1}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images!r}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # right-action order: x(p*q) == q(p(x)), matching the usual x.pq
        q = other.images
        return Permutation(q[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def one_line(self) -> str:
        """Space-separated image list, e.g. ``0 2 1``."""
        return " ".join(str(v) for v in self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


class LoopTable:
    """A finite loop of order n.

    The table must be a Latin square whose row 0 and column 0 are the
    identity permutation; any other placement of the identity is rejected
    (use :func:`relabel` first if a table has its identity elsewhere).
    """

    __slots__ = ("n", "table", "_ldiv", "_rdiv")

    def __init__(self, rows):
        table = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(table)
        if n == 0:
            raise NoIdentityError("empty table has no identity element")
        for i, row in enumerate(table):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"entry {v} in row {i} out of range 0..{n - 1}")
        for i, row in enumerate(table):
            seen = [False] * n
            for v in row:
                if seen[v]:
                    raise NotLatinError("row", i, v)
                seen[v] = True
        for j in range(n):
            seen = [False] * n
            for i in range(n):
                v = table[i][j]
                if seen[v]:
                    raise NotLatinError("column", j, v)
                seen[v] = True
        if any(table[0][j] != j for j in range(n)) or any(
            table[i][0] != i for i in range(n)
        ):
            raise NoIdentityError("element 0 is not a two-sided identity")

        ldiv = [[0] * n for _ in range(n)]
        rdiv = [[0] * n for _ in range(n)]
        for a in range(n):
            row = table[a]
            for x in range(n):
                ldiv[a][row[x]] = x  # a*x = b  =>  a\b = x
        for y in range(n):
            row = table[y]
            for b in range(n):
                rdiv[row[b]][b] = y  # y*b = a  =>  a/b = y
        self.n = n
        self.table = table
        self._ldiv = tuple(tuple(r) for r in ldiv)
        self._rdiv = tuple(tuple(r) for r in rdiv)

    # -- basic operations ------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        """The product a*b."""
        return self.table[a][b]

    def ldiv(self, a: int, b: int) -> int:
        """Left division a\\b: the unique x with a*x = b."""
        return self._ldiv[a][b]

    def rdiv(self, a: int, b: int) -> int:
        """Right division a/b: the unique y with y*b = a."""
        return self._rdiv[a][b]

    def left_translation(self, x: int) -> Permutation:
        """The permutation y -> x*y."""
        return Permutation(self.table[x])

    def right_translation(self, x: int) -> Permutation:
        """The permutation y -> y*x."""
        return Permutation(row[x] for row in self.table)

    # -- inverses ---------------------------------------------------------

    def right_inverse(self, a: int) -> int:
        """The x with a*x = 0 (always exists)."""
        return self._ldiv[a][0]

    def left_inverse(self, a: int) -> int:
        """The y with y*a = 0 (always exists)."""
        return self._rdiv[0][a]

    def inverse(self, a: int) -> int:
        """The two-sided inverse of a.

        Raises :class:`NotTwoSidedError` when the left and right inverses
        of a differ; everything downstream that mentions inverses assumes
        they are two-sided, so a silent default would be wrong.
        """
        r = self._ldiv[a][0]
        if self._rdiv[0][a] != r:
            raise NotTwoSidedError(a)
        return r

    def has_two_sided_inverses(self) -> bool:
        ld, rd = self._ldiv, self._rdiv
        return all(ld[a][0] == rd[0][a] for a in range(self.n))

    def inversion(self) -> Permutation:
        """The inversion map J: x -> x^{-1}; requires two-sided inverses."""
        return Permutation(self.inverse(a) for a in range(self.n))

    # -- misc --------------------------------------------------------------

    def is_commutative(self) -> bool:
        t = self.table
        n = self.n
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    def elements(self) -> range:
        return range(self.n)

    def __eq__(self, other):
        return isinstance(other, LoopTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"LoopTable(order={self.n})"


def validate(raw) -> LoopTable:
    """Check the loop axioms on a raw square array and wrap it.

    The input is copied, never modified.  Raises :class:`NotLatinError`
    or :class:`NoIdentityError` on the first violated axiom.
    """
    return LoopTable(raw)


def relabel(rows, images) -> list[list[int]]:
    """Rename elements of a raw table by a permutation (e -> images[e]).

    Handy for moving a stray identity element to position 0 before
    calling :func:`validate`, which refuses to rename on its own.
    """
    p = Permutation(images)
    n = p.n
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[p(a)][p(b)] = p(rows[a][b])
    return out


# -- text format ------------------------------------------------------------
#
# Line 1 holds the order n; the next n lines hold n space-separated
# 0-based indices each.  '#' starts a comment line, blank lines and
# trailing whitespace are ignored, and element 0 must be the identity.


def loads(text: str, path: str = "<string>") -> LoopTable:
    n = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if n is None:
            if len(parts) != 1:
                raise FormatError("expected the order alone on the first data line", path, lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise FormatError(f"bad order {parts[0]!r}", path, lineno) from None
            if n < 1:
                raise FormatError(f"order must be positive, got {n}", path, lineno)
            continue
        if len(rows) == n:
            raise FormatError("unexpected data after the table", path, lineno)
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise FormatError(f"bad entry in row {len(rows)}", path, lineno) from None
        if len(row) != n:
            raise FormatError(f"expected {n} entries, got {len(row)}", path, lineno)
        for v in row:
            if not 0 <= v < n:
                raise FormatError(f"entry {v} out of range 0..{n - 1}", path, lineno)
        rows.append(row)
    if n is None:
        raise FormatError("empty input", path, 0)
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, got {len(rows)}", path, lineno if rows else 0)
    return LoopTable(rows)


def load(path) -> LoopTable:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read(), path=str(path))


def dumps(L: LoopTable) -> str:
    lines = [str(L.n)]
    lines.extend(" ".join(str(v) for v in row) for row in L.table)
    return "\n".join(lines) + "\n"


def save(L: LoopTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(L))
