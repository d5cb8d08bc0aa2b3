"""Left, middle and right nuclei of a loop.

Each nucleus is computed two ways: straight from its defining equation,
and as the set of companions that make the identity permutation a
pseudoautomorphism of the matching kind.  The two must agree on every
loop; tests exploit that as a cross-check.
"""

from __future__ import annotations

from enum import Enum

from .core import LoopTable, Permutation

__all__ = ["NucleusKind", "nucleus", "nucleus_via_pseudo", "is_subloop"]


class NucleusKind(Enum):
    LEFT = "left"
    MIDDLE = "middle"
    RIGHT = "right"


def nucleus(L: LoopTable, kind: NucleusKind) -> tuple:
    """Elements that associate in the given position with all pairs.

    Sorted tuple of element indices, computed by the defining triple loop.
    """
    n = L.n
    t = L.table
    out = []
    rng = range(n)
    if kind is NucleusKind.LEFT:
        for a in rng:
            if all(t[t[a][x]][y] == t[a][t[x][y]] for x in rng for y in rng):
                out.append(a)
    elif kind is NucleusKind.MIDDLE:
        for a in rng:
            if all(t[t[x][a]][y] == t[x][t[a][y]] for x in rng for y in rng):
                out.append(a)
    else:
        for a in rng:
            if all(t[t[x][y]][a] == t[x][t[y][a]] for x in rng for y in rng):
                out.append(a)
    return tuple(out)


def nucleus_via_pseudo(L: LoopTable, kind: NucleusKind) -> tuple:
    """The companions of the identity permutation, as a sorted tuple.

    Uses the full middle-pseudoautomorphism equation rather than the
    simplified two-term form, so the agreement with :func:`nucleus` is a
    genuine cross-check and not a tautology.
    """
    from .pseudo import is_pseudo

    iota = Permutation.identity(L.n)
    return tuple(c for c in range(L.n) if is_pseudo(L, kind, iota, c))


def is_subloop(L: LoopTable, elems) -> bool:
    """True iff elems contains 0 and is closed under *, \\ and /."""
    s = set(elems)
    if 0 not in s:
        return False
    for a in s:
        for b in s:
            if L.table[a][b] not in s or L.ldiv(a, b) not in s or L.rdiv(a, b) not in s:
                return False
    return True
