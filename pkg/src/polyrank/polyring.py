"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by
:func:`var_key`; the empty tuple is the constant monomial.  Polynomials are
immutable maps from monomials to nonzero :class:`fractions.Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from . import _lexer
from .errors import ParseError

ONE = ()


def var_key(name):
    # primed copies rank above their unprimed originals so that Groebner
    # leading terms prefer them and normal forms stay over X
    return (0 if name.endswith("'") else 1, name)


def is_primed(name):
    return name.endswith("'")


def prime_name(name):
    if is_primed(name):
        raise ValueError(f"variable {name!r} is already primed")
    return name + "'"


def unprime_name(name):
    return name[:-1] if is_primed(name) else name


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: var_key(item[0])))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_variables(m):
    return {v for v, _ in m}


def mono_from_dict(exps):
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda item: var_key(item[0])))


def mono_str(m):
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic order, optionally as a block order.

    With ``eliminate`` nonempty the order first compares the grevlex degree
    on the eliminated variables and breaks ties by grevlex on the rest, so
    it is an elimination order for that block.  Variables rank by
    :func:`var_key` unless ``precedence`` lists them explicitly.
    """

    eliminate: frozenset = frozenset()
    precedence: tuple = ()

    @property
    def kind(self):
        return "block-elimination" if self.eliminate else "graded-reverse-lexicographic"

    def rank(self, variables):
        """Variables from largest to smallest."""
        listed = [v for v in self.precedence if v in variables]
        rest = sorted((v for v in variables if v not in self.precedence), key=var_key)
        return tuple(listed + rest)

    def dense_key(self, ranked):
        """Key on exponent tuples (aligned with ``ranked``); larger is bigger."""
        if not self.eliminate:
            return _grevlex_key
        elim = [i for i, v in enumerate(ranked) if v in self.eliminate]
        rest = [i for i, v in enumerate(ranked) if v not in self.eliminate]

        def key(e):
            return (_grevlex_key([e[i] for i in elim]), _grevlex_key([e[i] for i in rest]))

        return key

    def sort_key(self, variables):
        ranked = self.rank(variables)
        index = {v: i for i, v in enumerate(ranked)}
        dense = self.dense_key(ranked)

        def key(m):
            e = [0] * len(ranked)
            for v, k in m:
                e[index[v]] = k
            return dense(tuple(e))

        return key


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder()


def _coerce(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Rational)):
        return Polynomial.constant(value)
    return NotImplemented


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def var(cls, name):
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def parse(cls, text, variables=None):
        """Parse the printed form; ``variables`` optionally restricts names."""
        stream = _lexer.TokenStream(text)

        def make_var(tok):
            name = tok.text
            if name.count("'") > 1:
                stream.error(f"double prime in {name!r}", tok)
            if variables is not None and unprime_name(name) not in variables:
                stream.error(f"undeclared variable {unprime_name(name)!r}", tok)
            return cls.var(name)

        result = _lexer.parse_term(stream, make_var)
        if stream.peek.kind != "eof":
            stream.error(f"unexpected {stream.peek.text!r}")
        return result

    # -- inspection -----------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m):
        return self._terms.get(m, Fraction(0))

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    @property
    def constant_term(self):
        return self._terms.get(ONE, Fraction(0))

    @property
    def variables(self):
        out = set()
        for m in self._terms:
            out.update(v for v, _ in m)
        return frozenset(out)

    def degree(self):
        return max((mono_degree(m) for m in self._terms), default=0)

    @property
    def is_linear(self):
        return all(mono_degree(m) <= 1 for m in self._terms)

    def linear_coefficients(self):
        """Return ``(constant, {var: coeff})``; raises if not linear."""
        if not self.is_linear:
            raise ValueError(f"{self} is not linear")
        coeffs = {m[0][0]: c for m, c in self._terms.items() if m}
        return self.constant_term, coeffs

    def leading_term(self, order=GREVLEX):
        key = order.sort_key(self.variables)
        m = max(self._terms, key=key)
        return m, self._terms[m]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Polynomial):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return ZERO
        return Polynomial._raw({m: c * v for m, v in self._terms.items()})

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            if not c.is_constant or c.is_zero:
                raise ZeroDivisionError("division only by a nonzero constant")
            c = c.constant_term
        return self.scale(1 / Fraction(c))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- ring maps ------------------------------------------------------

    def prime(self):
        """Replace every variable ``x`` by ``x'``."""
        return self.rename({v: prime_name(v) for v in self.variables})

    def rename(self, mapping):
        out = {}
        for m, c in self._terms.items():
            key = mono_from_dict({mapping.get(v, v): e for v, e in m})
            out[key] = out.get(key, 0) + c
        return Polynomial(out)

    def substitute(self, mapping):
        """Homomorphic image under ``variable -> Polynomial``; unmapped variables stay."""
        images = {v: _coerce(p) for v, p in mapping.items()}
        powers = {}
        result = ZERO
        for m, c in self._terms.items():
            term = Polynomial.constant(c)
            rest = {}
            for v, e in m:
                if v in images:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = images[v] ** e
                    term = term * powers[key]
                else:
                    rest[v] = e
            if rest:
                term = term * Polynomial._raw({mono_from_dict(rest): Fraction(1)})
            result = result + term
        return result

    def eval(self, valuation):
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                try:
                    t *= Fraction(valuation[v]) ** e
                except KeyError:
                    raise KeyError(f"no value for variable {v!r}") from None
            total += t
        return total

    # -- printing -------------------------------------------------------

    def sorted_terms(self, order=GREVLEX):
        key = order.sort_key(self.variables)
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = mono_str(m)
            else:
                body = f"{a}*{mono_str(m)}"
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


ZERO = Polynomial._raw({})


def const(c):
    return Polynomial.constant(c)


def var(name):
    return Polynomial.var(name)


def parse_polynomial(text, variables=None):
    return Polynomial.parse(text, variables)


def prime(p):
    return p.prime()


def substitute(p, mapping):
    return p.substitute(mapping)


def evaluate(p, valuation):
    return p.eval(valuation)


def normalize_scale(p):
    """Positive rescaling making the grevlex-leading coefficient +-1."""
    if p.is_zero:
        return p
    _, c = p.leading_term()
    return p.scale(1 / abs(c))


__all__ = [
    "GREVLEX",
    "MonomialOrder",
    "ONE",
    "ParseError",
    "Polynomial",
    "ZERO",
    "const",
    "evaluate",
    "is_primed",
    "mono_degree",
    "mono_from_dict",
    "mono_mul",
    "normalize_scale",
    "parse_polynomial",
    "prime",
    "prime_name",
    "substitute",
    "unprime_name",
    "var",
    "var_key",
]
