"""Autotopisms and pseudoautomorphisms of a finite loop.

An autotopism is a permutation triple (alpha, beta, gamma) with
``alpha(x)*beta(y) == gamma(x*y)`` for all x, y.  A pseudoautomorphism of
a given kind is a single permutation sigma plus a companion element c
satisfying one of three equations:

    left:    a*sigma(x*y)            == (a*sigma(x)) * sigma(y)
    middle:  sigma(x*y)              == (sigma(x)/(c\\1)) * (c\\sigma(y))
    right:   sigma(x*y)*b            == sigma(x) * (sigma(y)*b)

Each kind corresponds to autotopisms of a special shape whose
distinguished component fixes the identity; :func:`as_autotopism` builds
that shape.  Enumeration is by backtracking on sigma's images: every kind's
equation can be solved for sigma(x*y) given sigma(x) and sigma(y), so each
newly decided image forces a cascade of others and conflicts prune early.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .core import LoopError, LoopTable, Permutation
from .identities import builtin, holds
from .nuclei import NucleusKind

__all__ = [
    "Autotopism",
    "PseudoPair",
    "PreconditionError",
    "NotWCIPError",
    "NotRIPError",
    "InvalidPairError",
    "InvalidTripleError",
    "is_autotopism",
    "compose",
    "invert",
    "all_autotopisms",
    "is_automorphism",
    "is_pseudo",
    "as_autotopism",
    "decompose_autotopism",
    "iter_pseudo",
    "enumerate_pseudo",
    "companions",
    "has_wcip",
    "has_rip",
    "wcip_reflect",
    "rip_reflect",
    "middle_to_right",
    "right_to_middle",
]


class PreconditionError(LoopError):
    """A structural precondition on the loop does not hold."""


class NotWCIPError(PreconditionError):
    def __init__(self):
        super().__init__("loop does not satisfy the weak commutative inverse property")


class NotRIPError(PreconditionError):
    def __init__(self):
        super().__init__("loop does not satisfy the right inverse property")


class InvalidPairError(LoopError):
    """A claimed pseudoautomorphism pair fails its defining equation."""


class InvalidTripleError(LoopError):
    """A claimed autotopism fails the autotopism equation."""


@dataclass(frozen=True)
class Autotopism:
    alpha: Permutation
    beta: Permutation
    gamma: Permutation


@dataclass(frozen=True)
class PseudoPair:
    kind: NucleusKind
    sigma: Permutation
    companion: int


def is_autotopism(L: LoopTable, alpha: Permutation, beta: Permutation, gamma: Permutation) -> bool:
    """Exhaustive n^2 check of alpha(x)*beta(y) == gamma(x*y)."""
    t = L.table
    a, b, g = alpha.images, beta.images, gamma.images
    for x in range(L.n):
        ax = a[x]
        tx = t[x]
        trow = t[ax]
        for y in range(L.n):
            if trow[b[y]] != g[tx[y]]:
                return False
    return True


def compose(t1: Autotopism, t2: Autotopism) -> Autotopism:
    """Componentwise composition, t1 applied first."""
    return Autotopism(t1.alpha * t2.alpha, t1.beta * t2.beta, t1.gamma * t2.gamma)


def invert(t: Autotopism) -> Autotopism:
    return Autotopism(t.alpha.inverse(), t.beta.inverse(), t.gamma.inverse())


def all_autotopisms(L: LoopTable) -> list:
    """Every autotopism of L, in lexicographic order of (gamma, u, v).

    Any autotopism satisfies alpha = gamma R_v^{-1} and beta = gamma L_u^{-1}
    with u = alpha(0), v = beta(0) (specialize the equation at y = 0 and
    x = 0), so sweeping gamma over all permutations and (u, v) over all
    element pairs finds them all in n! * n^2 candidate checks.
    """
    n = L.n
    t = L.table
    ld, rd = L._ldiv, L._rdiv
    found = []
    for g in permutations(range(n)):
        for u in range(n):
            beta = tuple(ld[u][g[y]] for y in range(n))
            if sorted(beta) != list(range(n)):
                continue
            for v in range(n):
                alpha = tuple(rd[g[x]][v] for x in range(n))
                ok = True
                for x in range(n):
                    ta = t[alpha[x]]
                    tx = t[x]
                    for y in range(n):
                        if ta[beta[y]] != g[tx[y]]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    found.append(
                        Autotopism(Permutation(alpha), Permutation(beta), Permutation(g))
                    )
    return found


def is_automorphism(L: LoopTable, sigma: Permutation) -> bool:
    """sigma(x*y) == sigma(x)*sigma(y) for all x, y."""
    t = L.table
    s = sigma.images
    for x in range(L.n):
        tx = t[x]
        ts = t[s[x]]
        for y in range(L.n):
            if s[tx[y]] != ts[s[y]]:
                return False
    return True


# -- the three defining equations ---------------------------------------------


def is_pseudo(L: LoopTable, kind: NucleusKind, sigma: Permutation, c: int) -> bool:
    """Exhaustive n^2 check of the kind's pseudoautomorphism equation."""
    n = L.n
    t = L.table
    s = sigma.images
    if kind is NucleusKind.LEFT:
        ca = t[c]
        for x in range(n):
            lx = t[ca[s[x]]]
            tx = t[x]
            for y in range(n):
                if ca[s[tx[y]]] != lx[s[y]]:
                    return False
        return True
    if kind is NucleusKind.MIDDLE:
        rd, ld = L._rdiv, L._ldiv
        c1 = ld[c][0]
        lc = ld[c]
        for x in range(n):
            row = t[rd[s[x]][c1]]
            tx = t[x]
            for y in range(n):
                if s[tx[y]] != row[lc[s[y]]]:
                    return False
        return True
    if kind is NucleusKind.RIGHT:
        for x in range(n):
            sx = s[x]
            tx = t[x]
            for y in range(n):
                if t[s[tx[y]]][c] != t[sx][t[s[y]][c]]:
                    return False
        return True
    raise ValueError(f"unknown kind {kind!r}")


def _triple(L: LoopTable, kind: NucleusKind, sigma: Permutation, c: int) -> Autotopism:
    """The autotopism shape of a pseudo pair, without validity checking."""
    n = L.n
    s = sigma.images
    t = L.table
    if kind is NucleusKind.LEFT:
        # (sigma L_c, sigma, sigma L_c)
        a = Permutation(t[c][s[x]] for x in range(n))
        return Autotopism(a, sigma, a)
    if kind is NucleusKind.MIDDLE:
        # (sigma R_{c\1}^{-1}, sigma L_c^{-1}, sigma)
        c1 = L.ldiv(c, 0)
        alpha = Permutation(L.rdiv(s[x], c1) for x in range(n))
        beta = Permutation(L.ldiv(c, s[y]) for y in range(n))
        return Autotopism(alpha, beta, sigma)
    # (sigma, sigma R_c, sigma R_c)
    b = Permutation(t[s[x]][c] for x in range(n))
    return Autotopism(sigma, b, b)


def as_autotopism(L: LoopTable, pair: PseudoPair) -> Autotopism:
    """The autotopism witnessing a valid pseudo pair.

    The distinguished component (beta for left, gamma for middle, alpha
    for right) fixes element 0.  Raises :class:`InvalidPairError` when the
    pair fails its defining equation.
    """
    if not is_pseudo(L, pair.kind, pair.sigma, pair.companion):
        raise InvalidPairError(
            f"({pair.kind.value}, {pair.sigma.one_line()}, {pair.companion}) "
            "is not a pseudoautomorphism pair"
        )
    return _triple(L, pair.kind, pair.sigma, pair.companion)


def decompose_autotopism(L: LoopTable, t: Autotopism, kind: NucleusKind) -> PseudoPair:
    """Recover (sigma, companion) from an autotopism of the kind's shape."""
    if kind is NucleusKind.LEFT:
        pair = PseudoPair(kind, t.beta, t.alpha(0))
    elif kind is NucleusKind.MIDDLE:
        pair = PseudoPair(kind, t.gamma, L.rdiv(0, t.beta(0)))
    else:
        pair = PseudoPair(kind, t.alpha, t.beta(0))
    if _triple(L, kind, pair.sigma, pair.companion) != t or not is_pseudo(
        L, kind, pair.sigma, pair.companion
    ):
        raise InvalidTripleError(f"autotopism does not have the {kind.value} shape")
    return pair


# -- enumeration ---------------------------------------------------------------


def _forced_image(L: LoopTable, kind: NucleusKind, c: int):
    """Closure over F with sigma(x*y) == F(sigma(x), sigma(y))."""
    t = L.table
    ld, rd = L._ldiv, L._rdiv
    if kind is NucleusKind.LEFT:
        lc = ld[c]
        tc = t[c]

        def F(u, v):
            return lc[t[tc[u]][v]]

    elif kind is NucleusKind.MIDDLE:
        c1 = ld[c][0]
        lc = ld[c]

        def F(u, v):
            return t[rd[u][c1]][lc[v]]

    else:

        def F(u, v):
            return rd[t[u][t[v][c]]][c]

    return F


def iter_pseudo(L: LoopTable, kind: NucleusKind):
    """Yield every pseudo pair of the kind, ordered by (companion, sigma).

    sigma images are decided in element order with candidate values
    ascending, and each decision propagates all images forced through the
    defining equation, so the stream is lexicographic and needs no final
    re-check: a completed assignment has had every (x, y) pair enforced.
    """
    n = L.n
    t = L.table
    for c in range(n):
        F = _forced_image(L, kind, c)
        img = [-1] * n
        used = [False] * n
        decided: list[int] = []

        def place(x, v, trail):
            img[x] = v
            used[v] = True
            decided.append(x)
            trail.append(x)
            queue = [x]
            while queue:
                p = queue.pop()
                for q in tuple(decided):
                    for a, b in ((p, q), (q, p)):
                        target = t[a][b]
                        w = F(img[a], img[b])
                        tv = img[target]
                        if tv < 0:
                            if used[w]:
                                return False
                            img[target] = w
                            used[w] = True
                            decided.append(target)
                            trail.append(target)
                            queue.append(target)
                        elif tv != w:
                            return False
            return True

        def undo(trail):
            for x in reversed(trail):
                used[img[x]] = False
                img[x] = -1
            del decided[len(decided) - len(trail):]

        def extend():
            x = 0
            while x < n and img[x] >= 0:
                x += 1
            if x == n:
                yield PseudoPair(kind, Permutation(img), c)
                return
            for v in range(n):
                if used[v]:
                    continue
                trail: list[int] = []
                if place(x, v, trail):
                    yield from extend()
                undo(trail)

        # the image of 0 is forced to 0 for all three kinds
        seed: list[int] = []
        if place(0, 0, seed):
            yield from extend()
        undo(seed)


def enumerate_pseudo(L: LoopTable, kind: NucleusKind) -> list:
    """All pseudo pairs of the kind, sorted by (companion, sigma images)."""
    return list(iter_pseudo(L, kind))


def companions(L: LoopTable, kind: NucleusKind, sigma: Permutation) -> tuple:
    """All companions making sigma a pseudoautomorphism of the kind."""
    return tuple(c for c in range(L.n) if is_pseudo(L, kind, sigma, c))


# -- inverse-property machinery -------------------------------------------------


def has_wcip(L: LoopTable) -> bool:
    """Two-sided inverses plus (x*y)'*y = x'."""
    return holds(L, builtin("WCIP"))


def has_rip(L: LoopTable) -> bool:
    """Two-sided inverses plus (x*y)*y' = x."""
    return holds(L, builtin("RIP"))


def wcip_reflect(L: LoopTable, t: Autotopism) -> Autotopism:
    """Map (alpha, beta, gamma) to (J gamma J, beta, J alpha J).

    Valid on loops with the weak commutative inverse property, where it
    sends autotopisms to autotopisms and is an involution.
    """
    if not has_wcip(L):
        raise NotWCIPError()
    if not is_autotopism(L, t.alpha, t.beta, t.gamma):
        raise InvalidTripleError("not an autotopism")
    J = L.inversion()
    return Autotopism(J * t.gamma * J, t.beta, J * t.alpha * J)


def rip_reflect(L: LoopTable, t: Autotopism) -> Autotopism:
    """Map (alpha, beta, gamma) to (gamma, J beta J, alpha) on RIP loops."""
    if not has_rip(L):
        raise NotRIPError()
    if not is_autotopism(L, t.alpha, t.beta, t.gamma):
        raise InvalidTripleError("not an autotopism")
    J = L.inversion()
    return Autotopism(t.gamma, J * t.beta * J, t.alpha)


def middle_to_right(L: LoopTable, pair: PseudoPair) -> PseudoPair:
    """Convert a middle pair (sigma, c) to the right pair (JsigmaJ, c^{-1}).

    Requires the weak commutative inverse property; the same formula maps
    right pairs back to middle pairs (see :func:`right_to_middle`), and the
    two conversions are mutually inverse.
    """
    if pair.kind is not NucleusKind.MIDDLE:
        raise InvalidPairError(f"expected a middle pair, got {pair.kind.value}")
    return _reflect_pair(L, pair, NucleusKind.RIGHT)


def right_to_middle(L: LoopTable, pair: PseudoPair) -> PseudoPair:
    if pair.kind is not NucleusKind.RIGHT:
        raise InvalidPairError(f"expected a right pair, got {pair.kind.value}")
    return _reflect_pair(L, pair, NucleusKind.MIDDLE)


def _reflect_pair(L: LoopTable, pair: PseudoPair, out_kind: NucleusKind) -> PseudoPair:
    if not has_wcip(L):
        raise NotWCIPError()
    if not is_pseudo(L, pair.kind, pair.sigma, pair.companion):
        raise InvalidPairError(
            f"({pair.kind.value}, {pair.sigma.one_line()}, {pair.companion}) "
            "is not a pseudoautomorphism pair"
        )
    J = L.inversion()
    return PseudoPair(out_kind, J * pair.sigma * J, L.inverse(pair.companion))
