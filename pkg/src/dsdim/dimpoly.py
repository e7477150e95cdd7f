"""Dimension polynomials from characteristic sets.

The count splits into free terms that are multiples of no sigma-leader
(``U1``) and multiples of leaders that escape every reduction through a
block-order overflow (``U2``). Both are closed-form numerical polynomials in
``t_1..t_p`` (block orders) and ``t_{p+1}`` (automorphism order).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .lambda_monoid import LambdaMonomial, Partition, lcm_monomials, order_component, similar
from .linpoly import LinearDSPolynomial, charset_linear_system, leaders
from .numpoly import (
    InvariantReport,
    NumericalPolynomial,
    binomial_term,
    invariant_report,
)
from .setdim import omega_E, phi_A

__all__ = [
    "LeaderRow",
    "LeaderTable",
    "OracleMismatch",
    "DimensionPolynomialReport",
    "u1_polynomial",
    "u2_polynomial",
    "dimension_polynomial",
    "polynomial_from_table",
    "strength_report",
    "stability_offset",
    "system_dimension_polynomial",
]


class OracleMismatch(AssertionError):
    """Closed-form and brute-force counts disagree."""


@dataclass(frozen=True)
class LeaderRow:
    generator: int
    v: LambdaMonomial  # sigma-leader monomial
    a: Tuple[int, ...]  # ord_i v
    b: Tuple[int, ...]  # ord_i u^(i)
    c: int  # ord_sigma v

    @property
    def gaps(self) -> Tuple[int, ...]:
        return tuple(y - x for x, y in zip(self.a, self.b))


@dataclass(frozen=True)
class LeaderTable:
    partition: Partition
    num_generators: int
    rows: Tuple[LeaderRow, ...]

    @classmethod
    def from_charset(cls, charset: Sequence[LinearDSPolynomial], num_generators: int,
                     partition: Partition) -> "LeaderTable":
        rows = []
        for A in charset:
            v, us = leaders(A)
            rows.append(make_row(v.generator, v.monomial,
                                 [u.monomial for u in us], partition))
        return cls(partition, num_generators, tuple(rows))

    def exponent_points(self, generator: int) -> List[Tuple[int, ...]]:
        return [r.v.delta + r.v.sigma for r in self.rows if r.generator == generator]


def make_row(generator: int, v: LambdaMonomial, block_leaders: Sequence[LambdaMonomial],
             partition: Partition) -> LeaderRow:
    p = partition.p
    a = tuple(order_component(v, i, partition) for i in range(1, p + 1))
    b = tuple(order_component(u, i + 1, partition) for i, u in enumerate(block_leaders))
    if any(x > y for x, y in zip(a, b)):
        raise ValueError("block leader of lower order than the sigma-leader")
    return LeaderRow(generator, v, a, b, v.ord_sigma())


def u1_polynomial(table: LeaderTable) -> NumericalPolynomial:
    """Terms that are multiples of no sigma-leader, summed over indeterminates."""
    part = table.partition
    out = NumericalPolynomial.zero(part.p + 1)
    for k in range(table.num_generators):
        out = out + phi_A(table.exponent_points(k), part)
    return out


def _sigma_count(L: Tuple[int, ...], p: int) -> NumericalPolynomial:
    """Vectors of ``Z^n`` in ``L``'s orthant dominating ``|L|``, by ord_sigma <= t_{p+1}.

    Positive parts sit in coordinates ``0..n-1`` and negative parts in
    ``n..2n-1``. A nonzero ``L_i`` blocks the opposite sign; a zero ``L_i``
    only forbids using both signs at once.
    """
    n = len(L)
    points = []
    for i, l in enumerate(L):
        e = [0] * (2 * n)
        if l > 0:
            e[n + i] = 1
        elif l < 0:
            e[i] = 1
        else:
            e[i] = e[n + i] = 1
        points.append(tuple(e))
    poly = omega_E(points, (0,) * p + (2 * n,))
    shift = sum(abs(l) for l in L)
    return poly.shift(p, -shift) if shift else poly


def _delta_count(part: Partition, sums: Sequence[int]) -> NumericalPolynomial:
    out = NumericalPolynomial.constant(part.p + 1, 1)
    for k, (mk, ck) in enumerate(zip(part.block_sizes, sums)):
        out = out * binomial_term(part.p + 1, k, mk - ck, mk)
    return out


def _similar_cliques(rows: Sequence[LeaderRow]):
    """Nonempty index sets whose sigma-leaders are pairwise similar."""
    idx = list(range(len(rows)))

    def extend(chosen, start):
        for j in range(start, len(idx)):
            if all(similar(rows[j].v, rows[i].v) for i in chosen):
                nxt = chosen + [j]
                yield nxt
                yield from extend(nxt, j + 1)

    yield from extend([], 0)


def u2_polynomial(table: LeaderTable) -> NumericalPolynomial:
    """Leader multiples that escape reduction by every leader dividing them.

    For each pairwise-similar family ``S`` on one indeterminate the
    multiples of ``L = lcm(S)`` are counted twice: once inside the full
    box and once inside the box shrunk by ``S_k = max_{j in S}(b_kj - a_kj)``
    in block ``k``. Their difference counts the common multiples that
    escape every member of ``S``, and inclusion-exclusion assembles the union.
    """
    part = table.partition
    p = part.p
    out = NumericalPolynomial.zero(p + 1)
    for k in range(table.num_generators):
        rows = [r for r in table.rows if r.generator == k]
        for clique in _similar_cliques(rows):
            fam = [rows[i] for i in clique]
            L = lcm_monomials([r.v for r in fam])
            c = tuple(order_component(L, i, part) for i in range(1, p + 1))
            gaps = tuple(max(col) for col in zip(*(r.gaps for r in fam)))
            if not any(gaps):
                continue
            full = _delta_count(part, c)
            shrunk = _delta_count(part, [ci + g for ci, g in zip(c, gaps)])
            term = _sigma_count(L.sigma, p) * (full - shrunk)
            out = out + term if len(fam) % 2 else out - term
    return out


def polynomial_from_table(table: LeaderTable) -> Tuple[NumericalPolynomial, NumericalPolynomial]:
    return u1_polynomial(table), u2_polynomial(table)


def stability_offset(table: LeaderTable) -> Tuple[int, ...]:
    """Grid corner from which closed form and brute-force counts agree."""
    p = table.partition.p
    block = [sum(r.b[k] for r in table.rows) for k in range(p)]
    sig = sum(r.c for r in table.rows) + 2 * table.partition.n
    return tuple(block) + (sig,)


@dataclass
class DimensionPolynomialReport:
    phi: NumericalPolynomial
    u1_part: NumericalPolynomial
    u2_part: NumericalPolynomial
    invariants: InvariantReport
    charset_echo: List[str]
    table: LeaderTable
    oracle_note: Optional[str] = None
    extra: Dict[str, object] = field(default_factory=dict)


def _verify_with_oracle(table: LeaderTable, phi: NumericalPolynomial, cap: int) -> str:
    from .oracle import GridSpec, count_reduced_terms, interpolate_numerical

    part = table.partition
    lo = stability_offset(table)
    caps = part.caps()
    grid = GridSpec(lo, tuple(x + c + 1 for x, c in zip(lo, caps)))
    values = {r: count_reduced_terms(table, r, cap=cap) for r in grid.points()}
    for r, val in values.items():
        if phi(*r) != val:
            raise OracleMismatch(f"closed form gives {phi(*r)} at {r}, enumeration gives {val}")
    interp = interpolate_numerical(values, caps, lo)
    if interp != phi:
        raise OracleMismatch(f"interpolated {interp} differs from {phi}")
    return f"agreement on grid {grid} ({len(values)} points)"


def dimension_polynomial(charset: Sequence[LinearDSPolynomial], num_generators: int,
                         partition: Partition, *, check_oracle: bool = False,
                         names: Sequence[str] = None, cap: int = 10 ** 6
                         ) -> DimensionPolynomialReport:
    table = LeaderTable.from_charset(charset, num_generators, partition)
    u1, u2 = polynomial_from_table(table)
    phi = u1 + u2
    inv = invariant_report(phi, partition.caps())
    note = _verify_with_oracle(table, phi, cap) if check_oracle else None
    return DimensionPolynomialReport(
        phi=phi, u1_part=u1, u2_part=u2, invariants=inv,
        charset_echo=[A.to_str(names) for A in charset], table=table, oracle_note=note,
    )


def system_dimension_polynomial(system, *, check_oracle: bool = False, max_rounds: int = 1000,
                                cap: int = 10 ** 6) -> DimensionPolynomialReport:
    """Characteristic-set route for a parsed system."""
    charset = charset_linear_system(system.polys, max_rounds=max_rounds)
    return dimension_polynomial(charset, len(system.indeterminates), system.partition,
                                check_oracle=check_oracle, names=system.indeterminates,
                                cap=cap)


def _var_names(p: int) -> List[str]:
    return [f"t{i + 1}" for i in range(p + 1)]


def strength_report(report: DimensionPolynomialReport, grid: Sequence[Tuple[int, ...]]) -> str:
    p = report.table.partition.p
    names = _var_names(p)
    lines = [f"Phi = {report.phi.to_str(names)}", ""]
    lines.append("Phi(r1,...,r%d) is the number of Taylor coefficients of orders" % (p + 1))
    lines.append("bounded by (r1,...,rp) in the derivation blocks and rp+1 in the shifts")
    lines.append("that remain free once the system is imposed (strength of the system).")
    lines.append("")
    lines.append("r -> Phi(r)")
    for r in grid:
        lines.append(f"{tuple(r)} -> {report.phi(*r)}")
    lines.append("")
    lines.extend(report.invariants.lines())
    return "\n".join(lines) + "\n"

