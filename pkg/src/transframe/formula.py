"""Modal formula syntax: AST, parser, printer and the standard formula families.

Concrete syntax::

    ~ φ   [] φ   <> φ   (also ``box φ``, ``dia φ``)
    φ & ψ      φ | ψ      φ -> ψ      bot      ( φ )

Unary operators bind tightest, then ``&``, then ``|``, then ``->``
(right-associative).  ``&`` and ``|`` are n-ary in the AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FormulaSyntaxError, InvalidIndex


class Formula:
    """Base class of formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    def __and__(self, other: "Formula") -> "Formula":
        return conj(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return disj(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("And needs at least two conjuncts; use conj()")


@dataclass(frozen=True)
class Or(Formula):
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("Or needs at least two disjuncts; use disj()")


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    arg: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    arg: Formula


BOT = Bottom()
TOP = Not(BOT)


def conj(*args: Formula) -> Formula:
    """Conjunction that collapses the unary and empty cases."""
    if len(args) == 1 and not isinstance(args[0], Formula):
        args = tuple(args[0])
    if not args:
        return TOP
    if len(args) == 1:
        return args[0]
    return And(tuple(args))


def disj(*args: Formula) -> Formula:
    if len(args) == 1 and not isinstance(args[0], Formula):
        args = tuple(args[0])
    if not args:
        return BOT
    if len(args) == 1:
        return args[0]
    return Or(tuple(args))


def children(phi: Formula) -> tuple:
    if isinstance(phi, (Not, Box, Diamond)):
        return (phi.arg,)
    if isinstance(phi, (And, Or)):
        return phi.args
    if isinstance(phi, Implies):
        return (phi.left, phi.right)
    return ()


def subformulas(phi: Formula) -> list:
    """Distinct subformulas in post-order (children before parents)."""
    out, seen = [], set()
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            if node not in seen:
                seen.add(node)
                out.append(node)
            continue
        if node in seen:
            continue
        stack.append((node, True))
        for c in reversed(children(node)):
            stack.append((c, False))
    return out


def _var_key(name: str):
    m = re.fullmatch(r"([A-Za-z_]*?)(\d*)", name)
    prefix, digits = m.groups() if m else (name, "")
    return (prefix, int(digits) if digits else -1, name)


def variables(phi: Formula) -> list[str]:
    """Variable names of ``phi`` in natural order (``p2`` before ``p10``)."""
    names = {n.name for n in subformulas(phi) if isinstance(n, Var)}
    return sorted(names, key=_var_key)


def size(phi: Formula) -> int:
    return 1 + sum(size(c) for c in children(phi))


# -- printing ------------------------------------------------------------

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = range(1, 6)


def _prec(phi: Formula) -> int:
    if isinstance(phi, Implies):
        return _PREC_IMP
    if isinstance(phi, Or):
        return _PREC_OR
    if isinstance(phi, And):
        return _PREC_AND
    if isinstance(phi, (Not, Box, Diamond)):
        return _PREC_UNARY
    return _PREC_ATOM


def to_text(phi: Formula) -> str:
    """Print with the fewest parentheses that still parse back to ``phi``."""

    def wrap(child: Formula, needs: bool) -> str:
        s = to_text(child)
        return f"({s})" if needs else s

    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Bottom):
        return "bot"
    if isinstance(phi, (Not, Box, Diamond)):
        op = {Not: "~", Box: "[]", Diamond: "<>"}[type(phi)]
        return op + wrap(phi.arg, _prec(phi.arg) < _PREC_UNARY)
    if isinstance(phi, And):
        return " & ".join(wrap(a, _prec(a) <= _PREC_AND) for a in phi.args)
    if isinstance(phi, Or):
        return " | ".join(wrap(a, _prec(a) <= _PREC_OR) for a in phi.args)
    if isinstance(phi, Implies):
        return f"{wrap(phi.left, _prec(phi.left) <= _PREC_IMP)} -> {to_text(phi.right)}"
    raise TypeError(f"not a formula: {phi!r}")


def to_unicode(phi: Formula) -> str:
    text = to_text(phi)
    for a, b in (("[]", "□"), ("<>", "◇"), ("->", "→"), ("&", "∧"), ("|", "∨"), ("~", "¬"), ("bot", "⊥")):
        text = text.replace(a, b)
    return text


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op>->|\[\]|<>|[~&|()]|[¬∧∨→□◇⊥])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)
_SYMBOLS = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "□": "[]", "◇": "<>", "⊥": "bot"}
_KEYWORDS = {"box": "[]", "dia": "<>", "bot": "bot"}


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos + 1, text)
        start = m.start("op") if m.group("op") else m.start("ident")
        if m.group("op"):
            tok = _SYMBOLS.get(m.group("op"), m.group("op"))
            tokens.append((tok, None, start + 1))
        else:
            word = m.group("ident")
            if word in _KEYWORDS:
                tokens.append((_KEYWORDS[word], None, start + 1))
            else:
                tokens.append(("var", word, start + 1))
        pos = m.end()
    tokens.append(("eof", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        kind, _, col = self.peek()
        found = "end of input" if kind == "eof" else repr(self.text[col - 1:col + 1].strip() or kind)
        raise FormulaSyntaxError(f"expected {what}, found {found}", col, self.text)

    def parse(self) -> Formula:
        phi = self.implication()
        if self.peek()[0] != "eof":
            self.fail("end of input")
        return phi

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        args = [self.conjunction()]
        while self.peek()[0] == "|":
            self.take()
            args.append(self.conjunction())
        return disj(*args)

    def conjunction(self) -> Formula:
        args = [self.unary()]
        while self.peek()[0] == "&":
            self.take()
            args.append(self.unary())
        return conj(*args)

    def unary(self) -> Formula:
        kind = self.peek()[0]
        if kind == "~":
            self.take()
            return Not(self.unary())
        if kind == "[]":
            self.take()
            return Box(self.unary())
        if kind == "<>":
            self.take()
            return Diamond(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "var":
            self.take()
            return Var(value)
        if kind == "bot":
            self.take()
            return BOT
        if kind == "(":
            self.take()
            phi = self.implication()
            if self.peek()[0] != ")":
                self.fail("')'")
            self.take()
            return phi
        self.fail("a formula")


def parse(text: str) -> Formula:
    """Parse concrete syntax; raises :class:`FormulaSyntaxError` with a column."""
    return _Parser(text).parse()


# -- formula families ----------------------------------------------------

def p(i: int) -> Var:
    return Var(f"p{i}")


Q = Var("q")


def _check_index(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidIndex(f"family index must be an integer >= 1, got {n!r}")


def mk_B(n: int) -> Formula:
    """Depth formula: ``B1 = <>[]p1 -> p1``, ``B(i+1) = <>([]p(i+1) & ~Bi) -> p(i+1)``."""
    _check_index(n)
    phi = Implies(Diamond(Box(p(1))), p(1))
    for i in range(2, n + 1):
        phi = Implies(Diamond(And((Box(p(i)), Not(phi)))), p(i))
    return phi


def _width_consequent(n: int) -> Formula:
    return disj(*(
        Diamond(And((p(i), Or((p(j), Diamond(p(j)))))))
        for i in range(n + 1) for j in range(n + 1) if i != j
    ))


def mk_Wid(n: int) -> Formula:
    _check_index(n)
    return Implies(conj(*(Diamond(p(i)) for i in range(n + 1))), _width_consequent(n))


def mk_Wid_plus(n: int) -> Formula:
    _check_index(n)
    inner = And((Box(Not(Q)), conj(*(Diamond(p(i)) for i in range(n + 1)))))
    return Implies(And((Q, Diamond(inner))), _width_consequent(n))


def mk_Wid_bullet(n: int) -> Formula:
    _check_index(n)
    ante = conj(*(Diamond(And((p(i), Box(Not(p(i)))))) for i in range(n + 1)))
    return Implies(ante, _width_consequent(n))
