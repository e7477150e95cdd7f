"""Coefficient fields for linear difference-differential polynomials.

Two models are provided:

``RATIONAL``
    Constants in Q. Every derivation kills them and every automorphism fixes them.
``SYMBOLIC``
    Rational functions over Q in formal tokens ``lam(name)``. Tokens with
    different names or different operators are algebraically independent and
    nonzero; a derivation maps ``lam(name)`` to ``(delta*lam)(name)`` and
    extends to rational functions by the chain rule.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

import sympy

from .lambda_monoid import LambdaMonomial

__all__ = ["CoefficientModel", "RATIONAL", "SYMBOLIC", "model_by_name", "token"]

# symbol name -> (base name, operator applied to it); bare names map to None
_TOKENS: Dict[str, Tuple[str, object]] = {}


def _token_name(name: str, lam: LambdaMonomial) -> str:
    if lam.is_identity():
        return name
    return f"{lam}({name})".replace(" ", "")


def token(name: str, lam: LambdaMonomial) -> sympy.Symbol:
    """The formal coefficient ``lam(name)``."""
    key = _token_name(name, lam)
    entry = (name, None if lam.is_identity() else lam)
    prev = _TOKENS.get(key)
    if prev is None:
        _TOKENS[key] = entry
    elif prev != entry:
        raise ValueError(f"token name clash for {key}")
    return sympy.Symbol(key)


def _unpack(sym: sympy.Symbol, m: int, n: int) -> Tuple[str, LambdaMonomial]:
    try:
        name, lam = _TOKENS[sym.name]
    except KeyError:
        raise ValueError(f"{sym} is not a registered coefficient token") from None
    return name, (LambdaMonomial.identity(m, n) if lam is None else lam)


class CoefficientModel:
    """Field operations plus the action of derivations and automorphisms."""

    name = "abstract"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def convert(self, value):
        raise NotImplementedError

    def is_zero(self, c) -> bool:
        raise NotImplementedError

    def add(self, a, b):
        return self.convert(a + b)

    def sub(self, a, b):
        return self.convert(a - b)

    def mul(self, a, b):
        return self.convert(a * b)

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("division by a zero coefficient")
        return self.convert(a / b)

    def neg(self, a):
        return self.convert(-a)

    def derive(self, c, index: int, m: int, n: int):
        """Apply the derivation ``delta_{index+1}``."""
        raise NotImplementedError

    def shift(self, c, sigma: Tuple[int, ...], m: int):
        """Apply the automorphism ``alpha^sigma``."""
        raise NotImplementedError

    def to_str(self, c) -> str:
        return str(c)

    def signed_str(self, c) -> Tuple[bool, str, bool]:
        """``(negative, magnitude text, magnitude is a sum)`` for display."""
        neg = c < 0
        return neg, str(-c if neg else c), False

    def __repr__(self):
        return f"<CoefficientModel {self.name}>"


class RationalModel(CoefficientModel):
    name = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def convert(self, value):
        if isinstance(value, sympy.Basic):
            if not value.is_Rational:
                raise TypeError(f"{value} is not a rational constant")
            return Fraction(int(value.p), int(value.q))
        return Fraction(value)

    def is_zero(self, c) -> bool:
        return c == 0

    def derive(self, c, index, m, n):
        return Fraction(0)

    def shift(self, c, sigma, m):
        return c


class SymbolicModel(CoefficientModel):
    name = "symbolic"

    def zero(self):
        return sympy.Integer(0)

    def one(self):
        return sympy.Integer(1)

    def convert(self, value):
        if isinstance(value, Fraction):
            return sympy.Rational(value.numerator, value.denominator)
        if isinstance(value, sympy.Basic):
            return sympy.cancel(value)
        return sympy.sympify(value)

    def is_zero(self, c) -> bool:
        return sympy.cancel(c) == 0

    def derive(self, c, index, m, n):
        c = sympy.sympify(c)
        step = LambdaMonomial(tuple(1 if j == index else 0 for j in range(m)), (0,) * n)
        out = sympy.Integer(0)
        for sym in sorted(c.free_symbols, key=lambda s: s.name):
            base, lam = _unpack(sym, m, n)
            out += sympy.diff(c, sym) * token(base, lam * step)
        return sympy.cancel(out)

    def shift(self, c, sigma, m):
        c = sympy.sympify(c)
        if not any(sigma) or not c.free_symbols:
            return c
        step = LambdaMonomial((0,) * m, tuple(sigma))
        subs = {}
        for sym in c.free_symbols:
            base, lam = _unpack(sym, m, len(sigma))
            subs[sym] = token(base, lam * step)
        return sympy.cancel(c.xreplace(subs))

    def to_str(self, c) -> str:
        return sympy.sstr(c, order="lex")

    def signed_str(self, c):
        c = sympy.sympify(c)
        neg = c.could_extract_minus_sign()
        mag = -c if neg else c
        return neg, self.to_str(mag), isinstance(mag, sympy.Add)


RATIONAL = RationalModel()
SYMBOLIC = SymbolicModel()


def model_by_name(name: str) -> CoefficientModel:
    if name in ("rational", "rational-constants"):
        return RATIONAL
    if name in ("symbolic", "formal-symbols"):
        return SYMBOLIC
    raise ValueError(f"unknown coefficient model {name!r}")
