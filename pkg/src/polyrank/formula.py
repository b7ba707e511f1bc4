"""Transition formulas: AST, parser, printer, DNF cells and evaluation.

Surface syntax::

    vars x y;
    transition: x - x*y >= 0 && y >= 0 && (x' == x && y' == y - 1 || ...)

Relations are ``<= < >= > == !=``; connectives ``! && ||``; ``int(t)``
atoms are parsed and kept but never used as hypotheses.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import _lexer
from .errors import ParseError, ResourceLimitError
from .polyring import Polynomial, is_primed, normalize_scale, prime_name, unprime_name

RELATIONS = ("<=", "<", ">=", ">", "==", "!=")
_KEYWORDS = {"vars", "transition", "int", "true", "false"}
_NEGATED = {"<=": ">", "<": ">=", ">=": "<", ">": "<=", "==": "!=", "!=": "=="}

DEFAULT_MAX_CELLS = 64


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    lhs: Polynomial
    rel: str
    rhs: Polynomial

    def __str__(self):
        return f"{self.lhs} {self.rel} {self.rhs}"


@dataclass(frozen=True)
class IntAtom:
    term: Polynomial

    def __str__(self):
        return f"int({self.term})"


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Not:
    arg: object

    def __str__(self):
        return f"!{_wrap(self.arg)}"


@dataclass(frozen=True)
class And:
    args: tuple

    def __str__(self):
        if not self.args:
            return "true"
        return " && ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Or:
    args: tuple

    def __str__(self):
        if not self.args:
            return "false"
        return " || ".join(_wrap(a) for a in self.args)


TRUE = Const(True)
FALSE = Const(False)


def _wrap(node):
    if isinstance(node, (And, Or)) and len(node.args) > 1:
        return f"({node})"
    return str(node)


def conjunction(*args):
    flat = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        elif a != TRUE:
            flat.append(a)
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def atoms(node):
    if isinstance(node, (Atom, IntAtom)):
        yield node
    elif isinstance(node, Not):
        yield from atoms(node.arg)
    elif isinstance(node, (And, Or)):
        for a in node.args:
            yield from atoms(a)


@dataclass(frozen=True)
class TransitionFormula:
    """A formula over ``variables`` and their primed copies."""

    variables: tuple
    body: object

    @property
    def state_variables(self):
        return frozenset(self.variables)

    @property
    def all_variables(self):
        return frozenset(self.variables) | {prime_name(v) for v in self.variables}

    def max_degree(self):
        degrees = [(a.lhs - a.rhs).degree() for a in atoms(self.body) if isinstance(a, Atom)]
        return max(degrees + [1])

    def with_body(self, body):
        return TransitionFormula(self.variables, body)

    def __str__(self):
        return f"vars {' '.join(self.variables)};\ntransition: {self.body}\n"

    @classmethod
    def parse(cls, text):
        return parse(text)


# -- parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text, variables=None):
        self.stream = _lexer.TokenStream(text)
        self.variables = variables

    def make_var(self, tok):
        name = tok.text
        if name in _KEYWORDS:
            self.stream.error(f"keyword {name!r} used as a variable", tok)
        if name.count("'") > 1:
            self.stream.error(f"double prime in {name!r}", tok)
        if self.variables is not None and unprime_name(name) not in self.variables:
            self.stream.error(f"undeclared variable {unprime_name(name)!r}", tok)
        return Polynomial.var(name)

    def term(self):
        return _lexer.parse_term(self.stream, self.make_var)

    def formula(self):
        args = [self.conj()]
        while self.stream.accept("||"):
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self):
        args = [self.unary()]
        while self.stream.accept("&&"):
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self):
        s = self.stream
        if s.accept("!"):
            return Not(self.unary())
        if s.at("("):
            start = s.index
            try:
                return self.atom()
            except ParseError:
                s.index = start
            s.expect("(")
            inner = self.formula()
            s.expect(")")
            return inner
        return self.atom()

    def atom(self):
        s = self.stream
        if s.accept("true"):
            return TRUE
        if s.accept("false"):
            return FALSE
        if s.at("int"):
            s.next()
            s.expect("(")
            t = self.term()
            s.expect(")")
            return IntAtom(t)
        lhs = self.term()
        tok = s.peek
        if not s.at(*RELATIONS):
            s.error(f"expected a relation, found {tok.text or 'end of input'!r}")
        s.next()
        return Atom(lhs, tok.text, self.term())

    def file(self):
        s = self.stream
        s.expect("vars")
        names = []
        while s.peek.kind == "ident" and not s.at("transition"):
            tok = s.next()
            if is_primed(tok.text) or tok.text in _KEYWORDS:
                s.error(f"invalid variable name {tok.text!r}", tok)
            if tok.text in names:
                s.error(f"duplicate variable {tok.text!r}", tok)
            names.append(tok.text)
            s.accept(",")
        s.expect(";")
        s.expect("transition")
        s.expect(":")
        self.variables = frozenset(names)
        body = self.formula()
        s.accept(";")
        if s.peek.kind != "eof":
            s.error(f"unexpected {s.peek.text!r}")
        return TransitionFormula(tuple(names), body)


def parse(text):
    """Parse a loop file (``vars ...; transition: ...``)."""
    return _Parser(text).file()


def parse_formula(text, variables=None):
    """Parse a bare formula; ``variables`` (unprimed) restricts names if given."""
    p = _Parser(text, frozenset(variables) if variables is not None else None)
    node = p.formula()
    if p.stream.peek.kind != "eof":
        p.stream.error(f"unexpected {p.stream.peek.text!r}")
    return node


def transition(variables, text):
    return TransitionFormula(tuple(variables), parse_formula(text, variables))


# -- DNF --------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    """A conjunction: ``e = 0`` for equalities, ``n >= 0``, ``s > 0``."""

    equalities: tuple = ()
    nonstrict: tuple = ()
    strict: tuple = ()
    integers: tuple = ()

    def conjoin(self, other):
        def merge(a, b):
            return tuple(dict.fromkeys(a + b))

        return Cell(
            merge(self.equalities, other.equalities),
            merge(self.nonstrict, other.nonstrict),
            merge(self.strict, other.strict),
            merge(self.integers, other.integers),
        )

    @property
    def variables(self):
        out = set()
        for p in self.equalities + self.nonstrict + self.strict:
            out |= p.variables
        return frozenset(out)

    def is_linear(self):
        return all(p.is_linear for p in self.equalities + self.nonstrict + self.strict)

    def holds(self, valuation):
        return (
            all(p.eval(valuation) == 0 for p in self.equalities)
            and all(p.eval(valuation) >= 0 for p in self.nonstrict)
            and all(p.eval(valuation) > 0 for p in self.strict)
        )

    def __str__(self):
        parts = [f"{p} == 0" for p in self.equalities]
        parts += [f"{p} >= 0" for p in self.nonstrict]
        parts += [f"{p} > 0" for p in self.strict]
        return " && ".join(parts) or "true"


_EMPTY_CELL = Cell()


def _monic(p):
    _, c = p.leading_term()
    return p.scale(1 / c)


def _atom_cells(lhs, rel, rhs):
    """Cells (as a list) for a positive literal."""
    if rel in ("<=", "<"):
        d = rhs - lhs
    elif rel in (">=", ">"):
        d = lhs - rhs
    else:
        d = lhs - rhs
    if d.is_constant:
        c = d.constant_term
        ok = {"<=": c >= 0, ">=": c >= 0, "<": c > 0, ">": c > 0, "==": c == 0, "!=": c != 0}[rel]
        return [_EMPTY_CELL] if ok else []
    if rel == "==":
        return [Cell(equalities=(_monic(d),))]
    if rel == "!=":
        return [Cell(strict=(normalize_scale(d),)), Cell(strict=(normalize_scale(-d),))]
    if rel in ("<", ">"):
        return [Cell(strict=(normalize_scale(d),))]
    return [Cell(nonstrict=(normalize_scale(d),))]


def _dnf(node, negate, limit):
    if isinstance(node, Const):
        return [_EMPTY_CELL] if node.value != negate else []
    if isinstance(node, Atom):
        rel = _NEGATED[node.rel] if negate else node.rel
        return _atom_cells(node.lhs, rel, node.rhs)
    if isinstance(node, IntAtom):
        # a negated Int atom is dropped, which only weakens the cell
        return [_EMPTY_CELL] if negate else [Cell(integers=(node.term,))]
    if isinstance(node, Not):
        return _dnf(node.arg, not negate, limit)
    conjunctive = isinstance(node, And) != negate
    parts = [_dnf(a, negate, limit) for a in node.args]
    if not conjunctive:
        out = [c for part in parts for c in part]
        if len(out) > limit:
            raise ResourceLimitError(f"DNF exceeds {limit} cells")
        return out
    cells = [_EMPTY_CELL]
    for part in parts:
        cells = [c.conjoin(d) for c in cells for d in part]
        if len(cells) > limit:
            raise ResourceLimitError(f"DNF exceeds {limit} cells")
    return cells


def dnf(formula, max_cells=DEFAULT_MAX_CELLS):
    """Cells whose disjunction is equivalent to ``formula``."""
    body = formula.body if isinstance(formula, TransitionFormula) else formula
    out = []
    for c in _dnf(body, False, max_cells):
        if c not in out:
            out.append(c)
    return out


# -- formula builders -------------------------------------------------------


def conjoin_primed_zero(formula, zeros):
    extra = [Atom(z.prime(), "==", Polynomial.constant(0)) for z in zeros if not z.is_zero]
    if not extra:
        return formula
    return formula.with_body(conjunction(formula.body, *extra))


def conjoin_frame(formula, zeros, positives):
    extra = [Atom(p.prime(), "==", p) for p in list(zeros) + list(positives) if not p.is_constant]
    if not extra:
        return formula
    return formula.with_body(conjunction(formula.body, *extra))


# -- evaluation -------------------------------------------------------------


def eval_formula(formula, valuation):
    node = formula.body if isinstance(formula, TransitionFormula) else formula
    return _eval(node, {k: Fraction(v) for k, v in valuation.items()})


def _eval(node, val):
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Atom):
        a, b = node.lhs.eval(val), node.rhs.eval(val)
        return {
            "<=": a <= b,
            "<": a < b,
            ">=": a >= b,
            ">": a > b,
            "==": a == b,
            "!=": a != b,
        }[node.rel]
    if isinstance(node, IntAtom):
        return node.term.eval(val).denominator == 1
    if isinstance(node, Not):
        return not _eval(node.arg, val)
    if isinstance(node, And):
        return all(_eval(a, val) for a in node.args)
    return any(_eval(a, val) for a in node.args)


__all__ = [
    "And",
    "Atom",
    "Cell",
    "Const",
    "FALSE",
    "IntAtom",
    "Not",
    "Or",
    "TRUE",
    "TransitionFormula",
    "atoms",
    "conjoin_frame",
    "conjoin_primed_zero",
    "conjunction",
    "dnf",
    "eval_formula",
    "parse",
    "parse_formula",
    "transition",
]
