import itertools

import pytest
from hypothesis import given, settings, strategies as st

from loopkit import Permutation, all_loops, cyclic
from loopkit.nuclei import NucleusKind, nucleus
from loopkit.pseudo import (
    Autotopism,
    InvalidPairError,
    InvalidTripleError,
    NotRIPError,
    NotWCIPError,
    PseudoPair,
    _triple,
    all_autotopisms,
    as_autotopism,
    companions,
    compose,
    decompose_autotopism,
    enumerate_pseudo,
    has_rip,
    has_wcip,
    invert,
    is_automorphism,
    is_autotopism,
    is_pseudo,
    middle_to_right,
    right_to_middle,
    rip_reflect,
    wcip_reflect,
)

import oracles


def iota_triple(n):
    i = Permutation.identity(n)
    return Autotopism(i, i, i)


class TestAutotopism:
    def test_identity_triple(self, z5):
        t = iota_triple(5)
        assert is_autotopism(z5, t.alpha, t.beta, t.gamma)

    def test_z5_translation_triples(self, z5):
        r1 = z5.right_translation(1)
        i = Permutation.identity(5)
        assert is_autotopism(z5, r1, i, r1)
        assert not is_autotopism(z5, r1, r1, r1)

    def test_compose_invert_group_laws(self, klein):
        atp = all_autotopisms(klein)
        ident = iota_triple(4)
        for t in atp[:20]:
            assert compose(t, invert(t)) == ident
            assert compose(invert(t), t) == ident
        assert invert(ident) == ident

    def test_composition_order_matches_right_action(self, z5):
        # (t1 t2).alpha sends x to t2.alpha(t1.alpha(x))
        r1 = z5.right_translation(1)
        i = Permutation.identity(5)
        t1 = Autotopism(r1, i, r1)
        t2 = Autotopism(r1, i, r1)
        both = compose(t1, t2)
        assert both.alpha(0) == 2

    def test_all_autotopisms_matches_brute_force(self, loops_upto_4):
        for L in loops_upto_4:
            want = oracles.brute_autotopisms(L.table)
            got = {
                (t.alpha.images, t.beta.images, t.gamma.images)
                for t in all_autotopisms(L)
            }
            assert got == want

    def test_closure_on_loops_upto_4(self, loops_upto_4):
        for L in loops_upto_4:
            atp = all_autotopisms(L)
            keys = {(t.alpha.images, t.beta.images, t.gamma.images) for t in atp}
            for t1 in atp:
                for t2 in atp:
                    c = compose(t1, t2)
                    assert (c.alpha.images, c.beta.images, c.gamma.images) in keys

    def test_z5_autotopism_count(self, z5):
        assert len(all_autotopisms(z5)) == 100  # n^2 * |Aut| for a group


class TestIsPseudo:
    def test_identity_with_trivial_companion(self, loops_upto_4):
        for L in loops_upto_4:
            iota = Permutation.identity(L.n)
            for kind in NucleusKind:
                assert is_pseudo(L, kind, iota, 0)

    def test_companion_zero_iff_automorphism(self, loops_upto_4, z5):
        for L in loops_upto_4 + [z5]:
            for images in itertools.permutations(range(L.n)):
                sigma = Permutation(images)
                aut = is_automorphism(L, sigma)
                for kind in NucleusKind:
                    assert is_pseudo(L, kind, sigma, 0) == aut

    def test_z5_right_with_companion(self, z5):
        assert is_pseudo(z5, NucleusKind.RIGHT, Permutation.identity(5), 3)

    def test_matches_naive_equations(self, loops_upto_4):
        for L in loops_upto_4:
            for images in itertools.permutations(range(L.n)):
                sigma = Permutation(images)
                for c in range(L.n):
                    for kind in NucleusKind:
                        assert is_pseudo(L, kind, sigma, c) == oracles.naive_pseudo_ok(
                            L.table, kind.value, images, c
                        )


class TestAsAutotopism:
    def test_left_pair_shape(self, z5):
        iota = Permutation.identity(5)
        for a in nucleus(z5, NucleusKind.LEFT):
            t = as_autotopism(z5, PseudoPair(NucleusKind.LEFT, iota, a))
            assert t.alpha == z5.left_translation(a)
            assert t.beta == iota
            assert t.gamma == t.alpha

    def test_right_pair_trivial(self, z5):
        t = as_autotopism(z5, PseudoPair(NucleusKind.RIGHT, Permutation.identity(5), 0))
        assert t == iota_triple(5)

    def test_invalid_pair_raises(self, s3):
        swap = Permutation([0, 2, 1, 3, 4, 5])
        assert not is_pseudo(s3, NucleusKind.RIGHT, swap, 0)
        with pytest.raises(InvalidPairError):
            as_autotopism(s3, PseudoPair(NucleusKind.RIGHT, swap, 0))

    def test_round_trip_upto_5(self, loops_upto_5):
        for L in loops_upto_5:
            for kind in NucleusKind:
                for pair in enumerate_pseudo(L, kind):
                    t = as_autotopism(L, pair)
                    assert is_autotopism(L, t.alpha, t.beta, t.gamma)
                    assert decompose_autotopism(L, t, kind) == pair

    def test_distinguished_component_fixes_identity(self, loops_upto_4):
        picked = {
            NucleusKind.LEFT: lambda t: t.beta,
            NucleusKind.MIDDLE: lambda t: t.gamma,
            NucleusKind.RIGHT: lambda t: t.alpha,
        }
        for L in loops_upto_4:
            for kind in NucleusKind:
                for pair in enumerate_pseudo(L, kind):
                    t = as_autotopism(L, pair)
                    assert picked[kind](t)(0) == 0

    def test_pair_valid_iff_shape_is_autotopism(self, loops_upto_4):
        # the shape correspondence, checked on raw (sigma, c) pairs that
        # need not be valid
        for L in loops_upto_4:
            perms = [Permutation(p) for p in itertools.permutations(range(L.n))]
            for kind in NucleusKind:
                for sigma in perms:
                    for c in range(L.n):
                        t = _triple(L, kind, sigma, c)
                        shape_ok = is_autotopism(L, t.alpha, t.beta, t.gamma)
                        assert is_pseudo(L, kind, sigma, c) == shape_ok


class TestEnumeration:
    def test_z5_counts(self, z5):
        for kind in NucleusKind:
            pairs = enumerate_pseudo(z5, kind)
            assert len(pairs) == 20  # |Aut(Z5)| * 5 companions
            for p in pairs:
                assert is_automorphism(z5, p.sigma)

    def test_matches_naive_filter_upto_4(self, loops_upto_4):
        for L in loops_upto_4:
            for kind in NucleusKind:
                got = {(p.sigma.images, p.companion) for p in enumerate_pseudo(L, kind)}
                want = oracles.naive_enumerate_pseudo(L.table, kind.value)
                assert got == want

    def test_output_sorted(self, loops_upto_4, z5):
        for L in loops_upto_4 + [z5]:
            for kind in NucleusKind:
                pairs = enumerate_pseudo(L, kind)
                keys = [(p.companion, p.sigma.images) for p in pairs]
                assert keys == sorted(keys)
                assert len(set(keys)) == len(keys)

    def test_companions_of_identity_are_nucleus(self, loops_upto_4):
        for L in loops_upto_4:
            iota = Permutation.identity(L.n)
            for kind in NucleusKind:
                assert companions(L, kind, iota) == nucleus(L, kind)

    def test_z5_automorphism_companions(self, z5):
        doubling = Permutation([(2 * i) % 5 for i in range(5)])
        assert is_automorphism(z5, doubling)
        assert companions(z5, NucleusKind.RIGHT, doubling) == (0, 1, 2, 3, 4)

    def test_wcip_companions_closed_under_inversion(self, loops_upto_5):
        for L in loops_upto_5:
            if not has_wcip(L):
                continue
            for pair in enumerate_pseudo(L, NucleusKind.LEFT):
                cs = companions(L, NucleusKind.LEFT, pair.sigma)
                assert L.inverse(pair.companion) in cs

    def test_automorphism_iff_companion_nuclear(self, loops_upto_4):
        for L in loops_upto_4:
            for kind in NucleusKind:
                nuc = set(nucleus(L, kind))
                for pair in enumerate_pseudo(L, kind):
                    assert is_automorphism(L, pair.sigma) == (pair.companion in nuc)


class TestReflections:
    def test_identity_triple_fixed(self, z5):
        t = iota_triple(5)
        assert wcip_reflect(z5, t) == t
        assert rip_reflect(z5, t) == t

    def test_wcip_reflect_closure_and_involution(self, loops_upto_5):
        for L in loops_upto_5:
            if not has_wcip(L):
                continue
            for t in all_autotopisms(L):
                r = wcip_reflect(L, t)
                assert is_autotopism(L, r.alpha, r.beta, r.gamma)
                assert wcip_reflect(L, r) == t

    def test_rip_reflect_closure_and_involution(self, loops_upto_5):
        for L in loops_upto_5:
            if not has_rip(L):
                continue
            for t in all_autotopisms(L):
                r = rip_reflect(L, t)
                assert is_autotopism(L, r.alpha, r.beta, r.gamma)
                assert rip_reflect(L, r) == t

    def test_precondition_errors(self, s3):
        assert not has_wcip(s3)  # nonabelian group
        with pytest.raises(NotWCIPError):
            wcip_reflect(s3, iota_triple(6))
        L = next(all_loops(5))  # one-sided inverses, so no RIP
        with pytest.raises(NotRIPError):
            rip_reflect(L, iota_triple(5))

    def test_invalid_triple(self, z5):
        r1 = z5.right_translation(1)
        with pytest.raises(InvalidTripleError):
            wcip_reflect(z5, Autotopism(r1, r1, r1))


class TestMiddleRightConversion:
    def test_z5_bijection(self, z5):
        middles = enumerate_pseudo(z5, NucleusKind.MIDDLE)
        rights = enumerate_pseudo(z5, NucleusKind.RIGHT)
        assert len(middles) == len(rights) == 20
        J = z5.inversion()
        image = set()
        for p in middles:
            q = middle_to_right(z5, p)
            assert q.sigma == J * p.sigma * J
            assert q.companion == z5.inverse(p.companion)
            assert is_pseudo(z5, NucleusKind.RIGHT, q.sigma, q.companion)
            image.add((q.sigma.images, q.companion))
        assert image == {(p.sigma.images, p.companion) for p in rights}

    def test_round_trip_upto_5(self, loops_upto_5):
        for L in loops_upto_5:
            if not has_wcip(L):
                continue
            for p in enumerate_pseudo(L, NucleusKind.MIDDLE):
                assert right_to_middle(L, middle_to_right(L, p)) == p
            for q in enumerate_pseudo(L, NucleusKind.RIGHT):
                assert middle_to_right(L, right_to_middle(L, q)) == q

    def test_kind_mismatch(self, z5):
        pair = PseudoPair(NucleusKind.RIGHT, Permutation.identity(5), 0)
        with pytest.raises(InvalidPairError):
            middle_to_right(z5, pair)

    def test_not_wcip(self, s3):
        pair = PseudoPair(NucleusKind.MIDDLE, Permutation.identity(6), 0)
        with pytest.raises(NotWCIPError):
            middle_to_right(s3, pair)

    def test_rip_aside_same_companion(self, loops_upto_5):
        # on RIP loops, middle pairs and right pairs coincide verbatim
        # (same sigma, same companion), unlike the WCIP conversion which
        # inverts both; both statements are checked, neither assumed
        for L in loops_upto_5:
            if not has_rip(L):
                continue
            mid = {(p.sigma.images, p.companion) for p in enumerate_pseudo(L, NucleusKind.MIDDLE)}
            rgt = {(p.sigma.images, p.companion) for p in enumerate_pseudo(L, NucleusKind.RIGHT)}
            assert mid == rgt
            if has_wcip(L):
                J = L.inversion()
                reflected = {
                    ((J * Permutation(s) * J).images, L.inverse(c)) for s, c in mid
                }
                assert reflected == rgt
