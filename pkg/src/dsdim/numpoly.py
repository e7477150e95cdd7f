"""Exact numerical polynomials and their canonical binomial form.

Polynomials are stored in the monomial basis as ``{exponent tuple: Fraction}``.
The canonical form expresses a polynomial as a combination of the products
``C(t_1 + i_1, i_1) * ... * C(t_k + i_k, i_k)``; for numerical polynomials these
coefficients are integers.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Index = Tuple[int, ...]

__all__ = [
    "NumericalPolynomial",
    "binomial_term",
    "canonical_coeffs",
    "from_canonical",
    "evaluate",
    "degrees",
    "maximal_elements_lex_family",
    "InvariantReport",
    "invariant_report",
    "ConsistencyError",
]


class ConsistencyError(ArithmeticError):
    """A computed polynomial violates an integrality or divisibility guarantee."""


def _clean(coeffs: Mapping[Index, Fraction]) -> Dict[Index, Fraction]:
    return {k: Fraction(v) for k, v in coeffs.items() if v != 0}


class NumericalPolynomial:
    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs: Mapping[Index, object] = None):
        self.num_vars = int(num_vars)
        self.coeffs = _clean(coeffs or {})
        for k in self.coeffs:
            if len(k) != self.num_vars:
                raise ValueError(f"exponent {k} does not have {num_vars} entries")

    @classmethod
    def constant(cls, num_vars: int, value) -> "NumericalPolynomial":
        return cls(num_vars, {(0,) * num_vars: Fraction(value)})

    @classmethod
    def zero(cls, num_vars: int) -> "NumericalPolynomial":
        return cls(num_vars)

    @classmethod
    def variable(cls, num_vars: int, var: int) -> "NumericalPolynomial":
        exp = [0] * num_vars
        exp[var] = 1
        return cls(num_vars, {tuple(exp): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "NumericalPolynomial") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"polynomials in {self.num_vars} and {other.num_vars} variables"
            )

    def _coerce(self, other):
        if isinstance(other, NumericalPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return NumericalPolynomial.constant(self.num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return NumericalPolynomial(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return NumericalPolynomial(self.num_vars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Index, Fraction] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return NumericalPolynomial(self.num_vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "NumericalPolynomial":
        c = Fraction(c)
        return NumericalPolynomial(self.num_vars, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NumericalPolynomial.constant(self.num_vars, other)
        if not isinstance(other, NumericalPolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.coeffs.items())))

    def __call__(self, *point) -> Fraction:
        return evaluate(self, point)

    def shift(self, var: int, c: int) -> "NumericalPolynomial":
        """Substitute ``t_var -> t_var + c``."""
        out = NumericalPolynomial.zero(self.num_vars)
        lin = NumericalPolynomial.variable(self.num_vars, var) + c
        for k, v in self.coeffs.items():
            rest = list(k)
            e = rest[var]
            rest[var] = 0
            base = NumericalPolynomial(self.num_vars, {tuple(rest): v})
            out = out + base * _power(lin, e)
        return out

    def total_degree(self) -> int:
        return max((sum(k) for k in self.coeffs), default=0)

    def homogeneous_part(self, d: int) -> "NumericalPolynomial":
        return NumericalPolynomial(
            self.num_vars, {k: v for k, v in self.coeffs.items() if sum(k) == d}
        )

    def sorted_items(self):
        """Monomials by decreasing total degree, then decreasing lex exponent."""
        return sorted(self.coeffs.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    def to_str(self, names: Sequence[str] = None) -> str:
        if names is None:
            names = [f"t{i + 1}" for i in range(self.num_vars)]
        if not self.coeffs:
            return "0"
        pieces = []
        for exp, c in self.sorted_items():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"NumericalPolynomial({self.num_vars}, {self.to_str()!r})"


def _power(p: NumericalPolynomial, e: int) -> NumericalPolynomial:
    out = NumericalPolynomial.constant(p.num_vars, 1)
    for _ in range(e):
        out = out * p
    return out


def binomial_term(num_vars: int, var: int, shift: int, degree: int) -> NumericalPolynomial:
    """``C(t_var + shift, degree)`` expanded in the monomial basis (``var`` is 0-based)."""
    if degree < 0:
        raise ValueError("binomial degree must be nonnegative")
    out = NumericalPolynomial.constant(num_vars, 1)
    t = NumericalPolynomial.variable(num_vars, var)
    for i in range(degree):
        out = out * (t + (shift - i))
    return out.scale(Fraction(1, math.factorial(degree)))


def _basis_element(index: Index) -> NumericalPolynomial:
    k = len(index)
    out = NumericalPolynomial.constant(k, 1)
    for var, i in enumerate(index):
        if i:
            out = out * binomial_term(k, var, i, i)
    return out


def canonical_coeffs(p: NumericalPolynomial) -> Dict[Index, Fraction]:
    """Coefficients of ``p`` in the basis ``prod_j C(t_j + i_j, i_j)``.

    The basis element for index ``i`` has leading monomial ``t^i / i!`` and all
    its other monomials are componentwise smaller, so peeling off the
    graded-lex largest monomial one at a time is exact.
    """
    rest = dict(p.coeffs)
    out: Dict[Index, Fraction] = {}
    while rest:
        top = max(rest, key=lambda k: (sum(k), k))
        a = rest[top] * math.prod(math.factorial(i) for i in top)
        out[top] = a
        for k, v in _basis_element(top).coeffs.items():
            val = rest.get(k, 0) - a * v
            if val:
                rest[k] = val
            else:
                rest.pop(k, None)
    return out


def from_canonical(num_vars: int, coeffs: Mapping[Index, object]) -> NumericalPolynomial:
    out = NumericalPolynomial.zero(num_vars)
    for idx, a in coeffs.items():
        if a:
            out = out + _basis_element(tuple(idx)).scale(a)
    return out


def evaluate(p: NumericalPolynomial, point: Sequence[int]) -> Fraction:
    if len(point) != p.num_vars:
        raise ValueError(f"point {tuple(point)} has wrong length for {p.num_vars} variables")
    total = Fraction(0)
    for exp, c in p.coeffs.items():
        term = c
        for x, e in zip(point, exp):
            term *= Fraction(x) ** e
        total += term
    return total


def degrees(p: NumericalPolynomial) -> Tuple[Tuple[int, ...], int]:
    per_var = tuple(
        max((k[i] for k in p.coeffs), default=0) for i in range(p.num_vars)
    )
    return per_var, p.total_degree()


def maximal_elements_lex_family(points: Iterable[Sequence[int]]) -> set:
    """Elements that are the maximum for at least one permutation-lexicographic order."""
    pts = {tuple(x) for x in points}
    if not pts:
        return set()
    k = len(next(iter(pts)))
    out = set()
    for perm in itertools.permutations(range(k)):
        out.add(max(pts, key=lambda e: tuple(e[j] for j in perm)))
    return out


@dataclass
class InvariantReport:
    total_degree: int
    leading_coeff: int
    trdeg: Fraction
    E_set: frozenset
    E_prime: frozenset
    fixed_coeffs: Dict[Index, int]
    top_degree_part: NumericalPolynomial = field(repr=False, default=None)

    def lines(self) -> list:
        out = [
            f"total degree d = {self.total_degree}",
            f"leading coefficient a_cap = {self.leading_coeff}",
            f"difference-differential transcendence degree = {self.trdeg}",
            "E = " + _fmt_set(self.E_set),
            "E' = " + _fmt_set(self.E_prime),
        ]
        for idx in sorted(self.fixed_coeffs, reverse=True):
            out.append(f"a{list(idx)} = {self.fixed_coeffs[idx]}")
        if self.top_degree_part is not None:
            out.append(f"degree-{self.total_degree} part = {self.top_degree_part}")
        return out


def _fmt_set(s) -> str:
    return "{" + ", ".join(str(tuple(x)) for x in sorted(s, reverse=True)) + "}"


def invariant_report(phi: NumericalPolynomial, caps: Sequence[int]) -> InvariantReport:
    """Read off the generator-independent data of a dimension polynomial.

    ``caps`` is ``(m_1, ..., m_p, n)``. The leading slot ``a_{m_1...m_p n}``
    must be divisible by ``2**n``.
    """
    caps = tuple(caps)
    if len(caps) != phi.num_vars:
        raise ValueError("caps do not match the number of variables")
    coeffs = canonical_coeffs(phi)
    for idx, a in coeffs.items():
        if a.denominator != 1:
            raise ConsistencyError(f"non-integral canonical coefficient {a} at {idx}")
        if any(i > c for i, c in zip(idx, caps)):
            raise ConsistencyError(f"canonical index {idx} exceeds caps {caps}")
    n = caps[-1]
    lead = int(coeffs.get(caps, 0))
    if lead % (2 ** n):
        raise ConsistencyError(f"2^{n} does not divide the leading coefficient {lead}")
    E = frozenset(coeffs)
    Ep = frozenset(maximal_elements_lex_family(E))
    d = phi.total_degree()
    return InvariantReport(
        total_degree=d,
        leading_coeff=lead,
        trdeg=Fraction(lead, 2 ** n),
        E_set=E,
        E_prime=Ep,
        fixed_coeffs={k: int(coeffs[k]) for k in Ep},
        top_degree_part=phi.homogeneous_part(d),
    )


def format_canonical(p: NumericalPolynomial) -> str:
    """Machine-readable canonical listing; parsed back by :func:`parse_canonical`."""
    lines = [f"nvars {p.num_vars}"]
    coeffs = canonical_coeffs(p)
    for idx in sorted(coeffs, reverse=True):
        lines.append("coeff " + " ".join(str(i) for i in idx) + f" : {coeffs[idx]}")
    return "\n".join(lines) + "\n"


def parse_canonical(text: str) -> NumericalPolynomial:
    num_vars = None
    coeffs: Dict[Index, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "nvars":
            num_vars = int(words[1])
        elif words[0] == "coeff":
            if ":" not in words:
                raise ValueError(f"line {lineno}: missing ':'")
            eq = words.index(":")
            coeffs[tuple(int(w) for w in words[1:eq])] = Fraction(words[eq + 1])
        else:
            raise ValueError(f"line {lineno}: unexpected {words[0]!r}")
    if num_vars is None:
        raise ValueError("missing nvars line")
    return from_canonical(num_vars, coeffs)
