"""Independent brute-force oracles used to pin expected test values.

Everything here works on raw tables (tuples of tuples) and recomputes
divisions by scanning, with no reuse of the package's precomputed
division tables or search code.  Tests that compare the package against
these functions are genuine dual routes, not tautologies.
"""

from itertools import permutations, product


def scan_ldiv(t, a, b):
    """The x with t[a][x] == b, by row scan."""
    return t[a].index(b)


def scan_rdiv(t, a, b):
    """The y with t[y][b] == a, by column scan."""
    n = len(t)
    for y in range(n):
        if t[y][b] == a:
            return y
    raise ValueError("not a Latin square")


def scan_inverse(t, a):
    """Two-sided inverse by scanning, or None if one-sided only."""
    right = scan_ldiv(t, a, 0)
    left = scan_rdiv(t, 0, a)
    return right if right == left else None


def naive_eval(t, term, env):
    """AST evaluation with scanned divisions; raises on one-sided inverses."""
    from loopkit.identities import Inv, Ldiv, Mul, One, Rdiv, Var

    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, One):
        return 0
    if isinstance(term, Inv):
        v = scan_inverse(t, naive_eval(t, term.arg, env))
        if v is None:
            raise ValueError("one-sided inverse")
        return v
    a = naive_eval(t, term.left, env)
    b = naive_eval(t, term.right, env)
    if isinstance(term, Mul):
        return t[a][b]
    if isinstance(term, Ldiv):
        return scan_ldiv(t, a, b)
    if isinstance(term, Rdiv):
        return scan_rdiv(t, a, b)
    raise TypeError(term)


def naive_check(t, ident):
    """First failing assignment in (alphabet order, element order), or None."""
    names = ident.variables
    n = len(t)
    for combo in product(range(n), repeat=len(names)):
        env = dict(zip(names, combo))
        if naive_eval(t, ident.lhs, env) != naive_eval(t, ident.rhs, env):
            return env
    return None


def naive_nucleus(t, which):
    """Nucleus from the defining equation; which in {'left','middle','right'}."""
    n = len(t)
    out = []
    for a in range(n):
        if which == "left":
            ok = all(t[t[a][x]][y] == t[a][t[x][y]] for x in range(n) for y in range(n))
        elif which == "middle":
            ok = all(t[t[x][a]][y] == t[x][t[a][y]] for x in range(n) for y in range(n))
        else:
            ok = all(t[t[x][y]][a] == t[x][t[y][a]] for x in range(n) for y in range(n))
        if ok:
            out.append(a)
    return tuple(out)


def naive_pseudo_ok(t, which, images, c):
    """The defining equation of the kind, checked directly with scans."""
    n = len(t)
    if which == "left":
        return all(
            t[c][images[t[x][y]]] == t[t[c][images[x]]][images[y]]
            for x in range(n)
            for y in range(n)
        )
    if which == "middle":
        c1 = scan_ldiv(t, c, 0)
        return all(
            images[t[x][y]] == t[scan_rdiv(t, images[x], c1)][scan_ldiv(t, c, images[y])]
            for x in range(n)
            for y in range(n)
        )
    return all(
        t[images[t[x][y]]][c] == t[images[x]][t[images[y]][c]]
        for x in range(n)
        for y in range(n)
    )


def naive_enumerate_pseudo(t, which):
    """All (images, c) pairs by the n! * n filter."""
    n = len(t)
    return {
        (images, c)
        for images in permutations(range(n))
        for c in range(n)
        if naive_pseudo_ok(t, which, images, c)
    }


def brute_autotopisms(t):
    """All autotopism triples by cubic brute force; order <= 4 only."""
    n = len(t)
    assert n <= 4
    perms = list(permutations(range(n)))
    found = set()
    for a in perms:
        for b in perms:
            for g in perms:
                if all(t[a[x]][b[y]] == g[t[x][y]] for x in range(n) for y in range(n)):
                    found.add((a, b, g))
    return found
