import itertools

import pytest
from hypothesis import given, strategies as st

from loopkit import all_loops, check_identity, cyclic
from loopkit.core import NotTwoSidedError
from loopkit.identities import (
    Identity,
    IdentitySyntaxError,
    Inv,
    Ldiv,
    MixedChainError,
    Mul,
    ONE,
    Rdiv,
    UnknownIdentityError,
    Var,
    builtin,
    eval_term,
    format_identity,
    format_term,
    holds,
    parse_identity,
    parse_term,
)

import oracles

x, y, z = Var("x"), Var("y"), Var("z")


class TestParser:
    def test_wcip(self):
        ident = parse_identity("(x*y)' * y = x'")
        assert ident == Identity(Mul(Inv(Mul(x, y)), y), Inv(x))
        assert ident.variables == ("x", "y")

    def test_constant_identity(self):
        ident = parse_identity("1 = 1")
        assert ident.variables == ()
        assert ident.lhs is ONE

    def test_mixed_chain_rejected(self):
        with pytest.raises(MixedChainError) as exc:
            parse_identity("x*y\\z = w")
        assert exc.value.position == 3

    def test_same_op_chain_left_associative(self):
        assert parse_term("x*y*z") == Mul(Mul(x, y), z)
        assert parse_term("x\\y\\z") == Ldiv(Ldiv(x, y), z)

    def test_parenthesized_mixed_chain(self):
        assert parse_term("(x*y)\\z") == Ldiv(Mul(x, y), z)
        assert parse_term("x*(y\\z)") == Mul(x, Ldiv(y, z))

    def test_postfix_binds_tightest(self):
        assert parse_term("x*y'") == Mul(x, Inv(y))
        assert parse_term("x''") == Inv(Inv(x))
        assert parse_term("(x*y)'") == Inv(Mul(x, y))

    def test_rdiv(self):
        assert parse_term("x/y") == Rdiv(x, y)

    @pytest.mark.parametrize(
        "text,pos",
        [
            ("x* = y", 3),
            ("x = ", 4),
            ("(x*y = z", 5),
            ("x = y)", 5),
            ("x ? y", 2),
            ("a = a", 0),  # not in the variable alphabet
            ("x y = z", 2),
        ],
    )
    def test_syntax_errors_carry_positions(self, text, pos):
        with pytest.raises(IdentitySyntaxError) as exc:
            parse_identity(text)
        assert exc.value.position == pos

    def test_missing_equals(self):
        with pytest.raises(IdentitySyntaxError):
            parse_identity("x*y")


TERMS = st.recursive(
    st.sampled_from([ONE, Var("x"), Var("y"), Var("z"), Var("u"), Var("v"), Var("w")]),
    lambda inner: st.one_of(
        st.builds(Mul, inner, inner),
        st.builds(Ldiv, inner, inner),
        st.builds(Rdiv, inner, inner),
        st.builds(Inv, inner),
    ),
    max_leaves=10,
)


@given(TERMS, TERMS)
def test_print_parse_round_trip(lhs, rhs):
    ident = Identity(lhs, rhs)
    assert parse_identity(format_identity(ident)) == ident


@given(TERMS)
def test_printer_is_canonical(t):
    # parsing the printed form and reprinting is a fixed point
    printed = format_term(t)
    assert format_term(parse_term(printed)) == printed


class TestEval:
    def test_inverse_of_product(self, z5):
        t = parse_term("(x*y)'")
        assert eval_term(z5, t, {"x": 2, "y": 4}) == 4

    def test_one(self, z5, s3):
        for L in (z5, s3):
            assert eval_term(L, ONE, {}) == 0

    def test_self_division_matches_row_scan(self, loops_upto_4):
        t = parse_term("x\\x")
        for L in loops_upto_4:
            for a in range(L.n):
                want = oracles.scan_ldiv(L.table, a, a)
                assert eval_term(L, t, {"x": a}) == want

    def test_not_two_sided_propagates(self):
        L = next(all_loops(5))  # elements 2..4 have one-sided inverses
        with pytest.raises(NotTwoSidedError):
            eval_term(L, parse_term("x'"), {"x": 2})


class TestCheckIdentity:
    def test_wcip_on_z5(self, z5):
        assert check_identity(z5, builtin("WCIP")) is None

    def test_aip_counterexample_on_s3(self, s3):
        cex = check_identity(s3, builtin("AIP"))
        assert cex == {"x": 1, "y": 3}
        assert cex == oracles.naive_check(s3.table, builtin("AIP"))
        assert s3.mul(1, 3) != s3.mul(3, 1)  # first failing pair does not commute

    def test_reflexivity(self, loops_upto_4):
        ident = parse_identity("x = x")
        for L in loops_upto_4:
            assert check_identity(L, ident) is None

    def test_agrees_with_naive_evaluator_upto_5(self, loops_upto_5):
        inv_free = [builtin("COMM"), builtin("ASSOC"), builtin("BOL"),
                    parse_identity("x\\(y/z) = (x\\y)/z")]
        with_inv = [builtin(n) for n in ("WCIP", "WCIP2", "AIP", "RIP", "LIP", "RIPINV")]
        for L in loops_upto_5:
            for ident in inv_free:
                assert check_identity(L, ident) == oracles.naive_check(L.table, ident)
            if L.has_two_sided_inverses():
                for ident in with_inv:
                    assert check_identity(L, ident) == oracles.naive_check(L.table, ident)

    def test_wcip_iff_wcip2_upto_5(self, loops_upto_5):
        for L in loops_upto_5:
            if not L.has_two_sided_inverses():
                continue
            a = check_identity(L, builtin("WCIP")) is None
            b = check_identity(L, builtin("WCIP2")) is None
            assert a == b

    def test_two_of_rip_aip_wcip_imply_third(self, loops_upto_5):
        for L in loops_upto_5:
            if not L.has_two_sided_inverses():
                continue
            props = [holds(L, builtin(n)) for n in ("RIP", "AIP", "WCIP")]
            assert sum(props) != 2


class TestBuiltins:
    def test_bol(self):
        assert builtin("BOL") == parse_identity("((x*y)*z)*y = x*((y*z)*y)")

    def test_comm(self):
        assert builtin("COMM") == parse_identity("x*y = y*x")

    def test_wcip2(self):
        assert builtin("WCIP2") == parse_identity("y'\\x' = x\\y")

    def test_unknown_name(self):
        with pytest.raises(UnknownIdentityError):
            builtin("MOUFANG")

    def test_holds_treats_one_sided_as_failure(self):
        L = next(all_loops(5))
        assert not holds(L, builtin("WCIP"))
