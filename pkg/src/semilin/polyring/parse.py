"""Expression grammar and canonical serialization.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' '-'? digits)?
    base   := identifier | integer | '(' expr ')' | '-' factor

``x^-n`` means ``1/x^n``.  Juxtaposition (``2x``, ``x y``, ``x(y)``) is a
syntax error.
"""
from __future__ import annotations

import re

from .fields import SimpleExtension
from .poly import Poly, Ring, ring as make_ring
from .ratfunc import RatFunc


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class UnknownVariableError(ExprError):
    def __init__(self, name, pos):
        super().__init__(f"unknown variable {name!r} at position {pos}")
        self.name = name
        self.pos = pos


class ExprZeroDivisionError(ExprError, ZeroDivisionError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        toks.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text, R: Ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.R = R
        ctx = R.ctx
        self.gen_name = ctx.name if isinstance(ctx, SimpleExtension) else None

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val or t[0] == "end":
            raise ExprSyntaxError(f"expected {val!r}", t[2])
        return t

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            if t[0] in ("id", "int") or t[1] == "(":
                raise ExprSyntaxError("implicit multiplication is not allowed", t[2])
            raise ExprSyntaxError(f"unexpected {t[1]!r}", t[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in ("*", "/"):
                self.take()
                w = self.factor()
                if t[1] == "*":
                    v = v * w
                else:
                    if w.is_zero():
                        raise ExprZeroDivisionError(f"division by zero at position {t[2]}")
                    v = v / w
            elif t[0] in ("id", "int") or t[1] == "(":
                raise ExprSyntaxError("implicit multiplication is not allowed", t[2])
            else:
                return v

    def factor(self):
        v = self.base()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            paren = self.peek()[0] == "op" and self.peek()[1] == "("
            if paren:
                self.take()
            neg = False
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.take()
                neg = True
            d = self.take()
            if d[0] != "int":
                raise ExprSyntaxError("expected an integer exponent", d[2])
            if paren:
                self.expect(")")
            e = int(d[1])
            if neg:
                if v.is_zero():
                    raise ExprZeroDivisionError(f"negative power of zero at position {d[2]}")
                v = v ** (-e)
            else:
                v = v ** e
        return v

    def base(self):
        t = self.take()
        kind, val, pos = t
        R = self.R
        if kind == "id":
            if val in R.index:
                return RatFunc(R.var(val))
            if val == self.gen_name:
                return RatFunc(R.const(R.ctx.gen()))
            raise UnknownVariableError(val, pos)
        if kind == "int":
            return RatFunc(R.const(int(val)))
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "op" and val == "-":
            return -self.factor()
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos)
        raise ExprSyntaxError(f"unexpected {val!r}", pos)


def parse_expr(text: str, context, variables=None) -> RatFunc:
    """Parse into a reduced RatFunc; ``context`` is a FieldCtx or a Ring."""
    R = context if isinstance(context, Ring) else make_ring(context, tuple(variables))
    return _Parser(text, R).parse()


def parse_poly(text: str, context, variables=None) -> Poly:
    f = parse_expr(text, context, variables)
    if not f.is_poly():
        raise ExprError("expression is not a polynomial")
    return f.num.scale(f.ctx.inv(f.den.const_value()))


def _fmt_mono(R: Ring, exps):
    parts = []
    for v, e in zip(R.vars, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    R = p.ring
    F = R.ctx
    if not p.terms:
        return "0"
    out = []
    for exps, c in p.items():
        mono = _fmt_mono(R, exps)
        s = F.fmt(c)
        neg = s.startswith("-") and not s.startswith("(")
        if neg:
            s = s[1:]
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_ratfunc(f: RatFunc) -> str:
    num = format_poly(f.num)
    if f.den.is_const():
        return num
    den = format_poly(f.den)
    if len(f.num) > 1:
        num = f"({num})"
    single_power = len(f.den) == 1 and f.den.lc() == f.ctx.one and "*" not in den
    if not single_power:
        den = f"({den})"
    return f"{num}/{den}"
