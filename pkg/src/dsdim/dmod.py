"""Free modules over the ring of difference-differential operators.

Module elements are finite sums ``a * lam * e_k``; they share the term and
reduction machinery of :mod:`dsdim.linpoly` (an element is a linear
polynomial with no constant part). Groebner bases are described through the
map ``rho(f) = z^d v_f`` into the semigroup ``Gamma``, where ``d_i`` is the
gap between the block-``i`` order of the block leader and of the
sigma-leader.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .coeffs import RATIONAL, CoefficientModel
from .dimpoly import DimensionPolynomialReport, LeaderRow, LeaderTable, polynomial_from_table
from .lambda_monoid import LambdaMonomial, Partition, Term, divides, order_component
from .linpoly import (
    CompletionError,
    LinearDSPolynomial,
    _reduce,
    apply,
    coherence_witnesses,
    leaders,
)
from .numpoly import invariant_report

__all__ = [
    "OperatorPolynomial",
    "FreeModuleElement",
    "GammaTerm",
    "ModulePresentation",
    "UnsupportedModel",
    "element",
    "rho_map",
    "gamma_divides",
    "module_reduce",
    "groebner_basis",
    "is_groebner",
    "kahler_module_of_linear_system",
    "gb_dimension_polynomial",
]


class UnsupportedModel(ValueError):
    pass


# a module element is a linear polynomial whose constant part is zero
FreeModuleElement = LinearDSPolynomial


def element(terms: Dict[Term, object], partition: Partition,
            model: CoefficientModel = RATIONAL) -> FreeModuleElement:
    return LinearDSPolynomial(terms, 0, partition=partition, model=model)


@dataclass
class OperatorPolynomial:
    """``sum a_lam * lam``, acting on module elements with coefficients on the left."""

    summands: Dict[LambdaMonomial, object]
    model: CoefficientModel = RATIONAL

    def act(self, f: FreeModuleElement) -> FreeModuleElement:
        out = LinearDSPolynomial.zero(f.partition, f.model)
        for lam in sorted(self.summands):
            out = out + apply(lam, f).scale(self.summands[lam])
        return out

    def __str__(self):
        if not self.summands:
            return "0"
        return " + ".join(f"({self.model.to_str(c)})*{lam}"
                          for lam, c in sorted(self.summands.items()))


@dataclass(frozen=True)
class GammaTerm:
    z_exp: Tuple[int, ...]
    base: Term

    def __post_init__(self):
        if any(k < 0 for k in self.z_exp):
            raise ValueError("z-exponents must be natural")

    def __str__(self):
        z = "*".join(f"z{i + 1}^{k}" if k > 1 else f"z{i + 1}"
                     for i, k in enumerate(self.z_exp) if k)
        body = f"{self.base.monomial} e{self.base.generator + 1}"
        return f"{z}*{body}" if z else body


@dataclass
class ModulePresentation:
    partition: Partition
    num_generators: int
    relations: List[FreeModuleElement]
    names: List[str] = field(default_factory=list)

    def __post_init__(self):
        for g in self.relations:
            if g.is_zero():
                raise ValueError("relations must be nonzero")
            if not g.model.is_zero(g.constant):
                raise ValueError("module relations have no constant part")
        if not self.names:
            self.names = [f"e{k + 1}" for k in range(self.num_generators)]


def rho_map(f: FreeModuleElement) -> GammaTerm:
    if f.is_zero():
        raise ValueError("rho is undefined on the zero element")
    v, us = leaders(f)
    part = f.partition
    d = tuple(order_component(u.monomial, i + 1, part) - order_component(v.monomial, i + 1, part)
              for i, u in enumerate(us))
    return GammaTerm(d, v)


def gamma_divides(a: GammaTerm, b: GammaTerm) -> bool:
    if len(a.z_exp) != len(b.z_exp):
        raise ValueError("Gamma terms of different shape")
    return (a.base.generator == b.base.generator
            and divides(a.base.monomial, b.base.monomial)
            and all(x <= y for x, y in zip(a.z_exp, b.z_exp)))


def module_reduce(f: FreeModuleElement, G: Sequence[FreeModuleElement]):
    """Normal form of ``f`` modulo ``G`` with operator multipliers.

    Returns ``(h, Q)`` where ``Q[i]`` is an :class:`OperatorPolynomial` and
    ``f - h = sum_i Q[i](G[i])``.
    """
    G = [g for g in G]
    if any(g.is_zero() for g in G):
        raise ValueError("reduction by the zero element")
    if not G or f.is_zero():
        return f, [OperatorPolynomial({}, f.model) for _ in G]
    h, cert = _reduce(f, G)
    return h, [OperatorPolynomial(dict(m), f.model) for m in cert.multipliers]


def _require_rational(elements: Sequence[FreeModuleElement]) -> None:
    for g in elements:
        if g.model.name != "rational":
            raise UnsupportedModel("Groebner completion and verification need constant "
                                   "rational coefficients")


def _closure_defects(G: Sequence[FreeModuleElement]) -> List[FreeModuleElement]:
    out = []
    for W in coherence_witnesses(G):
        h, _ = module_reduce(W, G)
        if not h.is_zero():
            out.append(h)
    return out


def _minimize(G: List[FreeModuleElement]) -> List[FreeModuleElement]:
    """Drop elements whose rho-image is divisible by another's and that reduce to 0 by the rest."""
    G = sorted(G, key=lambda g: _gamma_sort_key(rho_map(g)))
    keep = list(G)
    for g in reversed(G):
        rest = [x for x in keep if x is not g]
        if not rest:
            continue
        if any(gamma_divides(rho_map(x), rho_map(g)) for x in rest):
            if module_reduce(g, rest)[0].is_zero():
                keep = rest
    return keep


def _gamma_sort_key(t: GammaTerm):
    m = t.base.monomial
    return (m.ord(), t.base.generator, m.delta, m.sigma, t.z_exp)


def groebner_basis(relations: Sequence[FreeModuleElement],
                   max_rounds: int = 200) -> List[FreeModuleElement]:
    """Completion for constant rational coefficients (experimental)."""
    _require_rational(relations)
    G = [r.scale(1 / r.terms[leaders(r)[0]]) for r in relations if not r.is_zero()]
    for _ in range(max_rounds):
        new = _closure_defects(G)
        if not new:
            return _minimize(G)
        for h in new:
            if not any((h - g).is_zero() for g in G):
                G.append(h.scale(1 / h.terms[leaders(h)[0]]))
    raise CompletionError(f"Groebner completion did not finish in {max_rounds} rounds")


def is_groebner(G: Sequence[FreeModuleElement], presentation: ModulePresentation) -> bool:
    """Check that ``G`` generates the relation module and is closed under overlaps."""
    G = list(G)
    _require_rational(G + list(presentation.relations))
    if not G:
        return not presentation.relations
    if any(not module_reduce(r, G)[0].is_zero() for r in presentation.relations):
        return False
    if _closure_defects(G):
        return False
    reference = groebner_basis(presentation.relations)
    return all(module_reduce(g, reference)[0].is_zero() for g in G)


def kahler_module_of_linear_system(system) -> ModulePresentation:
    """Free module on ``e_1..e_s`` with one relation per equation; constants are dropped."""
    rels = []
    for P in system.polys:
        if P.is_constant():
            continue
        rels.append(LinearDSPolynomial(P.terms, 0, partition=P.partition, model=P.model))
    names = [f"e{k + 1}" for k in range(len(system.indeterminates))]
    return ModulePresentation(system.partition, len(system.indeterminates), rels, names)


def _rational_copy(f: FreeModuleElement) -> FreeModuleElement:
    if f.model.name == "rational":
        return f
    try:
        terms = {u: RATIONAL.convert(c) for u, c in f.terms.items()}
    except TypeError as exc:
        raise UnsupportedModel(f"relation {f} has non-constant coefficients") from exc
    return LinearDSPolynomial(terms, 0, partition=f.partition, model=RATIONAL)


def leader_table_from_gb(G: Sequence[FreeModuleElement], num_generators: int,
                         partition: Partition) -> LeaderTable:
    rows = []
    for g in G:
        t = rho_map(g)
        v = t.base.monomial
        a = tuple(order_component(v, i, partition) for i in range(1, partition.p + 1))
        b = tuple(x + z for x, z in zip(a, t.z_exp))
        rows.append(LeaderRow(t.base.generator, v, a, b, v.ord_sigma()))
    return LeaderTable(partition, num_generators, tuple(rows))


def gb_dimension_polynomial(presentation: ModulePresentation, G: Sequence[FreeModuleElement] = None,
                            *, verify: bool = True, max_rounds: int = 200
                            ) -> DimensionPolynomialReport:
    """Dimension polynomial of the filtered quotient module via a Groebner basis.

    When ``G`` is omitted it is computed by completion; a supplied ``G`` is
    verified first unless ``verify`` is false.
    """
    rels = [_rational_copy(r) for r in presentation.relations]
    pres = ModulePresentation(presentation.partition, presentation.num_generators, rels,
                              presentation.names)
    if G is None:
        G = groebner_basis(rels, max_rounds=max_rounds)
    else:
        G = [_rational_copy(g) for g in G]
        if verify and not is_groebner(G, pres):
            raise ValueError("supplied set is not a Groebner basis of the relation module")
    part = presentation.partition
    table = leader_table_from_gb(G, presentation.num_generators, part)
    u1, u2 = polynomial_from_table(table)
    phi = u1 + u2
    return DimensionPolynomialReport(
        phi=phi, u1_part=u1, u2_part=u2, invariants=invariant_report(phi, part.caps()),
        charset_echo=[g.to_str(presentation.names) for g in G], table=table,
        extra={"rho": [str(rho_map(g)) for g in G]},
    )
