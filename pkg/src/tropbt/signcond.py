"""Sign-monomial inequalities with parameter-dependent indices and exponents.

A condition such as ``(-s[1,v] s[1,v+1])^i s[0,i] s[2,2] > 0`` is parsed once
into a small tree and evaluated exactly against a sign table and a parameter
map.  Indices and exponents are integer linear expressions in the parameters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .errors import ParameterNotFound

_TOKEN = re.compile(r"\s*(s\[|\d+|[A-Za-z_]\w*|[\[\](),^+\-<>])")


@dataclass(frozen=True)
class Linear:
    """``const + sum(coeff * param)``."""

    const: int
    terms: tuple

    def value(self, params: Mapping[str, int]) -> int:
        out = self.const
        for name, c in self.terms:
            if name not in params:
                raise ParameterNotFound(f"parameter {name!r} is not resolved")
            out += c * params[name]
        return out

    def names(self) -> set:
        return {n for n, _c in self.terms}


@dataclass(frozen=True)
class Sign:
    a: Linear
    b: Linear


@dataclass(frozen=True)
class Power:
    base: object            # Sign, Product or the constant -1
    exponent: Linear


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Inequality:
    lhs: Product
    positive: bool          # "> 0" if true, "< 0" otherwise
    text: str

    def params(self) -> set:
        out = set()

        def walk(node):
            if isinstance(node, Product):
                for f in node.factors:
                    walk(f)
            elif isinstance(node, Power):
                out.update(node.exponent.names())
                walk(node.base)
            elif isinstance(node, Sign):
                out.update(node.a.names() | node.b.names())
        walk(self.lhs)
        return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"cannot tokenize {text[pos:]!r} in condition {self.text!r}")
            self.toks.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise ValueError(f"expected {want!r} at token {self.i} of condition {self.text!r}")
        self.i += 1
        return tok

    def linear(self) -> Linear:
        const, terms, sign = 0, {}, 1
        while True:
            tok = self.take()
            if tok.isdigit():
                const += sign * int(tok)
            elif tok.isidentifier():
                terms[tok] = terms.get(tok, 0) + sign
            else:
                raise ValueError(f"bad term {tok!r} in condition {self.text!r}")
            if self.peek() in ("+", "-"):
                sign = 1 if self.take() == "+" else -1
            else:
                return Linear(const, tuple(sorted(terms.items())))

    def exponent(self) -> Linear:
        if self.peek() == "(":
            self.take("(")
            e = self.linear()
            self.take(")")
            return e
        tok = self.take()
        if tok.isdigit():
            return Linear(int(tok), ())
        return Linear(0, ((tok, 1),))

    def factor(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            base = -1
        elif tok == "s[":
            self.take()
            a = self.linear()
            self.take(",")
            b = self.linear()
            self.take("]")
            base = Sign(a, b)
        elif tok == "(":
            self.take()
            base = self.product(")")
            self.take(")")
        else:
            raise ValueError(f"unexpected {tok!r} in condition {self.text!r}")
        if self.peek() == "^":
            self.take()
            return Power(base, self.exponent())
        return base

    def product(self, stop) -> Product:
        out = []
        while self.peek() not in stop:
            out.append(self.factor())
        if not out:
            raise ValueError(f"empty product in condition {self.text!r}")
        return Product(tuple(out))

    def inequality(self) -> Inequality:
        lhs = self.product(("<", ">"))
        rel = self.take()
        self.take("0")
        if self.peek() is not None:
            raise ValueError(f"trailing tokens in condition {self.text!r}")
        return Inequality(lhs, rel == ">", self.text.strip())


def parse_condition(text: str) -> Inequality:
    return _Parser(text).inequality()


def _value(node, params, signs) -> int:
    if isinstance(node, int):
        return node
    if isinstance(node, Sign):
        return signs[(node.a.value(params), node.b.value(params))]
    if isinstance(node, Power):
        e = node.exponent.value(params)
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        return _value(node.base, params, signs) ** e
    out = 1
    for f in node.factors:
        out *= _value(f, params, signs)
    return out


def evaluate(ineq: Inequality, params: Mapping[str, int], signs: Mapping[tuple, int]) -> bool:
    v = _value(ineq.lhs, params, signs)
    return v > 0 if ineq.positive else v < 0
