r"""A small language of loop identities and their exhaustive checking.

Grammar (whitespace-insensitive)::

    identity := term '=' term
    term     := factor (op factor)*        op in {*, \, /}
    factor   := atom "'"*
    atom     := '1' | x|y|z|u|v|w | '(' term ')'

The postfix inverse ``'`` binds tightest.  The three binary operators
share a single precedence level and associate to the left, and a chain
may only use one of them: linear notation for mixed products and
divisions is ambiguous, so ``x*y\z`` is rejected instead of silently
picking a reading.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import LoopError, LoopTable, NotTwoSidedError

__all__ = [
    "VARIABLES",
    "Term",
    "Var",
    "One",
    "Mul",
    "Ldiv",
    "Rdiv",
    "Inv",
    "ONE",
    "Identity",
    "IdentitySyntaxError",
    "MixedChainError",
    "UnknownIdentityError",
    "parse_identity",
    "parse_term",
    "format_term",
    "format_identity",
    "eval_term",
    "check_identity",
    "holds",
    "builtin",
    "BUILTIN_NAMES",
]

VARIABLES = ("x", "y", "z", "u", "v", "w")


class Term:
    """Base class for identity terms."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Ldiv(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Rdiv(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Inv(Term):
    arg: Term


ONE = One()


def term_variables(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, One):
        return frozenset()
    if isinstance(t, Inv):
        return term_variables(t.arg)
    return term_variables(t.left) | term_variables(t.right)


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @property
    def variables(self) -> tuple:
        """Variables of either side, in fixed alphabet order x,y,z,u,v,w."""
        present = term_variables(self.lhs) | term_variables(self.rhs)
        return tuple(v for v in VARIABLES if v in present)


class IdentitySyntaxError(LoopError):
    def __init__(self, position: int, expected: str):
        super().__init__(f"column {position + 1}: expected {expected}")
        self.position = position
        self.expected = expected


class MixedChainError(IdentitySyntaxError):
    def __init__(self, position: int):
        LoopError.__init__(
            self,
            f"column {position + 1}: chains mixing '*', '\\', '/' "
            "must be parenthesized",
        )
        self.position = position
        self.expected = "parenthesized subterm"


class UnknownIdentityError(LoopError):
    def __init__(self, name: str):
        super().__init__(f"unknown builtin identity {name!r}")
        self.name = name


_BINARY = {"*": Mul, "\\": Ldiv, "/": Rdiv}
_SINGLE = {"*", "\\", "/", "'", "(", ")", "=", "1"}


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    for i, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch in _SINGLE:
            toks.append((ch, i))
        elif ch in VARIABLES:
            toks.append(("var:" + ch, i))
        else:
            raise IdentitySyntaxError(i, "a variable, '1', an operator or a parenthesis")
    toks.append(("end", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self._toks = _tokenize(text)
        self._i = 0

    def _peek(self):
        return self._toks[self._i]

    def _advance(self):
        tok = self._toks[self._i]
        self._i += 1
        return tok

    def _expect(self, kind: str, what: str):
        tok, pos = self._advance()
        if tok != kind:
            raise IdentitySyntaxError(pos, what)

    def identity(self) -> Identity:
        lhs = self.term()
        self._expect("=", "'='")
        rhs = self.term()
        self._expect("end", "end of input")
        return Identity(lhs, rhs)

    def single_term(self) -> Term:
        t = self.term()
        self._expect("end", "end of input")
        return t

    def term(self) -> Term:
        node = self._factor()
        chain_op = None
        while self._peek()[0] in _BINARY:
            op, pos = self._advance()
            if chain_op is None:
                chain_op = op
            elif op != chain_op:
                raise MixedChainError(pos)
            node = _BINARY[op](node, self._factor())
        return node

    def _factor(self) -> Term:
        node = self._atom()
        while self._peek()[0] == "'":
            self._advance()
            node = Inv(node)
        return node

    def _atom(self) -> Term:
        tok, pos = self._advance()
        if tok == "1":
            return ONE
        if tok.startswith("var:"):
            return Var(tok[4:])
        if tok == "(":
            node = self.term()
            self._expect(")", "')'")
            return node
        raise IdentitySyntaxError(pos, "a variable, '1' or '('")


def parse_identity(text: str) -> Identity:
    """Parse ``lhs = rhs`` into an :class:`Identity`."""
    return _Parser(text).identity()


def parse_term(text: str) -> Term:
    return _Parser(text).single_term()


# -- printing -----------------------------------------------------------------
#
# format_term is a left inverse of the parser: parse(format(t)) == t, and
# the emitted string is the canonical form (compact, left-assoc chains
# unparenthesized, everything else parenthesized).


def _is_atomic(t: Term) -> bool:
    return isinstance(t, (Var, One, Inv))


def format_term(t: Term) -> str:
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Inv):
        inner = format_term(t.arg)
        if not _is_atomic(t.arg):
            inner = f"({inner})"
        return inner + "'"
    for sym, cls in _BINARY.items():
        if isinstance(t, cls):
            left = format_term(t.left)
            if not (_is_atomic(t.left) or type(t.left) is cls):
                left = f"({left})"
            right = format_term(t.right)
            if not _is_atomic(t.right):
                right = f"({right})"
            return f"{left}{sym}{right}"
    raise TypeError(f"not a term: {t!r}")


def format_identity(ident: Identity) -> str:
    return f"{format_term(ident.lhs)} = {format_term(ident.rhs)}"


# -- evaluation ---------------------------------------------------------------


def eval_term(L: LoopTable, t: Term, assignment: dict) -> int:
    """Evaluate a term bottom-up; every variable of t must be assigned.

    Propagates :class:`NotTwoSidedError` from inversion, by design: an
    identity mentioning ' cannot be decided on a loop whose inverses are
    one-sided only.
    """
    if isinstance(t, Var):
        return assignment[t.name]
    if isinstance(t, One):
        return 0
    if isinstance(t, Inv):
        return L.inverse(eval_term(L, t.arg, assignment))
    a = eval_term(L, t.left, assignment)
    b = eval_term(L, t.right, assignment)
    if isinstance(t, Mul):
        return L.table[a][b]
    if isinstance(t, Ldiv):
        return L.ldiv(a, b)
    return L.rdiv(a, b)


def check_identity(L: LoopTable, ident: Identity):
    """Decide an identity by exhausting all assignments.

    Returns None when the identity holds, otherwise the lexicographically
    first failing assignment (variables in alphabet order, elements
    ascending) as a dict.
    """
    names = ident.variables
    lhs, rhs = ident.lhs, ident.rhs
    for combo in itertools.product(range(L.n), repeat=len(names)):
        env = dict(zip(names, combo))
        if eval_term(L, lhs, env) != eval_term(L, rhs, env):
            return env
    return None


def holds(L: LoopTable, ident: Identity) -> bool:
    """True iff the identity holds on L.

    Unlike :func:`check_identity` this treats a missing two-sided inverse
    as "does not hold" rather than an error, which is what corpus filters
    want.
    """
    try:
        return check_identity(L, ident) is None
    except NotTwoSidedError:
        return False


# -- named identities ---------------------------------------------------------

_BUILTIN_SOURCES = {
    "WCIP": "(x*y)'*y = x'",
    "WCIP2": "y'\\x' = x\\y",
    "AIP": "(x*y)' = x'*y'",
    "RIP": "(x*y)*y' = x",
    "RIPINV": "x/y = x*y'",
    "BOL": "((x*y)*z)*y = x*((y*z)*y)",
    "LIP": "x'*(x*y) = y",
    "COMM": "x*y = y*x",
    "ASSOC": "(x*y)*z = x*(y*z)",
}

BUILTIN_NAMES = tuple(_BUILTIN_SOURCES)

_builtin_cache: dict = {}


def builtin(name: str) -> Identity:
    """The named identity (WCIP, WCIP2, AIP, RIP, RIPINV, BOL, LIP, COMM, ASSOC)."""
    try:
        source = _BUILTIN_SOURCES[name]
    except KeyError:
        raise UnknownIdentityError(name) from None
    if name not in _builtin_cache:
        _builtin_cache[name] = parse_identity(source)
    return _builtin_cache[name]
