"""Tokenizer and term parser shared by polynomial and formula syntax."""

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<op>&&|\|\||<=|>=|==|!=|[-+*/^()<>!:;,])
    """,
    re.VERBOSE,
)


class Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r})"


def tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i in range(m.start(), m.end()):
            if text[i] == "\n":
                line += 1
                line_start = i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def at(self, *texts):
        tok = self.peek
        return tok.kind in ("op", "ident") and tok.text in texts

    def accept(self, *texts):
        if self.at(*texts):
            return self.next()
        return None

    def expect(self, text):
        tok = self.peek
        if not self.at(text):
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.next()

    def error(self, message, tok=None):
        tok = tok or self.peek
        raise ParseError(message, tok.line, tok.column)


def parse_term(stream, make_var):
    """Parse ``term := product (('+'|'-') product)*``.

    ``make_var(token)`` turns an identifier token into a polynomial; it may
    raise to reject undeclared or double-primed names.
    """
    result = _parse_product(stream, make_var)
    while True:
        if stream.accept("+"):
            result = result + _parse_product(stream, make_var)
        elif stream.accept("-"):
            result = result - _parse_product(stream, make_var)
        else:
            return result


def _parse_product(stream, make_var):
    result = _parse_unary(stream, make_var)
    while True:
        if stream.accept("*"):
            result = result * _parse_unary(stream, make_var)
        elif stream.at("/"):
            tok = stream.next()
            divisor = _parse_unary(stream, make_var)
            if not divisor.is_constant or divisor.is_zero:
                stream.error("division only by a nonzero constant", tok)
            result = result * (1 / divisor.constant_term)
        else:
            return result


def _parse_unary(stream, make_var):
    if stream.accept("-"):
        return -_parse_unary(stream, make_var)
    if stream.accept("+"):
        return _parse_unary(stream, make_var)
    return _parse_power(stream, make_var)


def _parse_power(stream, make_var):
    base = _parse_atom(stream, make_var)
    if stream.accept("^"):
        tok = stream.peek
        if tok.kind != "num":
            stream.error("exponent must be a nonnegative integer literal")
        stream.next()
        return base ** int(tok.text)
    return base


def _parse_atom(stream, make_var):
    from .polyring import Polynomial

    tok = stream.peek
    if tok.kind == "num":
        stream.next()
        return Polynomial.constant(Fraction(int(tok.text)))
    if tok.kind == "ident":
        stream.next()
        return make_var(tok)
    if stream.accept("("):
        inner = parse_term(stream, make_var)
        stream.expect(")")
        return inner
    stream.error(f"expected a term, found {tok.text or 'end of input'!r}")
