"""Recursive-descent parser for Presburger formulas.

Grammar (precedence low to high)::

    formula  := ('exists' | 'forall') VAR (',' VAR)* '.' formula | disj
    disj     := conj ('or' conj)*
    conj     := neg ('and' neg)*
    neg      := 'not' neg | primary
    primary  := 'true' | 'false' | quantified | '(' formula ')' | atom
    atom     := INT '|' term | term (REL term)+
    term     := ['-'] prod (('+' | '-') prod)*
    prod     := unary ('*' unary)*           -- at most one non-literal factor
    unary    := '-' unary | INT | VAR | '(' term ')'

A chain ``a < b < c`` means ``a < b and b < c``.
"""

import re

from ..errors import PresburgerSyntaxError
from .syntax import (FALSE, TRUE, And, Div, Eq, Exists, Forall, Le, Lin, Not, Or)

KEYWORDS = {"and", "or", "not", "exists", "forall", "true", "false"}
RELATIONS = {"=", "!=", "<", "<=", ">", ">="}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<name>[a-z][a-z0-9_]*)
  | (?P<op><=|>=|!=|[=<>+\-*|().,])
""", re.X)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise PresburgerSyntaxError(f"unexpected character {text[pos]!r}", line, col,
                                        text[pos])
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            if kind == "name" and s in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, s, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        shown = tok.text if tok.kind != "eof" else "end of input"
        raise PresburgerSyntaxError(f"{msg} (at token {shown!r})", tok.line, tok.col, tok.text)

    def accept(self, text):
        if self.tok.text == text and self.tok.kind in ("op", "kw"):
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    # formulas
    def formula(self):
        if self.tok.kind == "kw" and self.tok.text in ("exists", "forall"):
            return self.quantified()
        return self.disj()

    def quantified(self):
        kind = Exists if self.tok.text == "exists" else Forall
        self.i += 1
        names = [self.variable()]
        while self.accept(","):
            names.append(self.variable())
        self.expect(".")
        body = self.formula()
        for name in reversed(names):
            body = kind(name, body)
        return body

    def variable(self):
        if self.tok.kind != "name":
            self.error("expected a variable")
        name = self.tok.text
        self.i += 1
        return name

    def disj(self):
        args = [self.conj()]
        while self.accept("or"):
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self):
        args = [self.neg()]
        while self.accept("and"):
            args.append(self.neg())
        return args[0] if len(args) == 1 else And(tuple(args))

    def neg(self):
        if self.accept("not"):
            return Not(self.neg())
        return self.primary()

    def primary(self):
        tok = self.tok
        if tok.kind == "kw":
            if tok.text == "true":
                self.i += 1
                return TRUE
            if tok.text == "false":
                self.i += 1
                return FALSE
            if tok.text in ("exists", "forall"):
                return self.quantified()
            self.error("unexpected keyword")
        if tok.text == "(":
            # a parenthesis opens either a sub-formula or a term
            save = self.i
            try:
                self.i += 1
                inner = self.formula()
                self.expect(")")
                if self.tok.text not in RELATIONS and self.tok.text not in {"*", "+", "-", "|"}:
                    return inner
            except PresburgerSyntaxError:
                pass
            self.i = save
        return self.atom()

    def atom(self):
        start = self.tok
        left = self.term()
        if self.tok.text == "|":
            if not left.is_constant or left.const < 1:
                self.error("divisibility needs a positive integer literal on the left", start)
            self.i += 1
            return Div(left.const, self.term())
        if self.tok.text not in RELATIONS:
            self.error("expected a comparison")
        atoms = []
        while self.tok.text in RELATIONS:
            rel = self.tok.text
            self.i += 1
            right = self.term()
            atoms.append(_relation(rel, left, right))
            left = right
        return atoms[0] if len(atoms) == 1 else And(tuple(atoms))

    # terms
    def term(self):
        negate = self.accept("-")
        t = self.prod()
        if negate:
            t = -t
        while self.tok.text in ("+", "-"):
            op = self.tok.text
            self.i += 1
            rhs = self.prod()
            t = t + rhs if op == "+" else t - rhs
        return t

    def prod(self):
        t = self.unary()
        while self.tok.text == "*":
            tok = self.tok
            self.i += 1
            rhs = self.unary()
            if t.is_constant:
                t = rhs.scale(t.const)
            elif rhs.is_constant:
                t = t.scale(rhs.const)
            else:
                self.error("multiplication is only allowed by integer literals", tok)
        return t

    def unary(self):
        tok = self.tok
        if self.accept("-"):
            return -self.unary()
        if tok.kind == "int":
            self.i += 1
            return Lin.constant(int(tok.text))
        if tok.kind == "name":
            self.i += 1
            return Lin.var(tok.text)
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        self.error("expected a term")


def _relation(rel, a, b):
    d = a - b
    if rel == "=":
        return Eq(d)
    if rel == "!=":
        return Not(Eq(d))
    if rel == "<":
        return Le(d.shift(1))
    if rel == "<=":
        return Le(d)
    if rel == ">":
        return Le((-d).shift(1))
    return Le(-d)


def parse(text):
    """Parse ``text`` into a formula AST; errors carry line and column."""
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        p.error("unexpected trailing input")
    return f
