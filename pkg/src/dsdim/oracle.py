"""Brute-force ground truth for the closed-form counts.

Everything here enumerates finite truncations directly and shares no code
with the inclusion-exclusion formulas it is used to check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .lambda_monoid import LambdaMonomial, Partition, Term, order_component, quotient
from .numpoly import NumericalPolynomial, binomial_term

__all__ = [
    "GridSpec",
    "CapExceeded",
    "InterpolationError",
    "enumerate_lambda",
    "lambda_size",
    "count_VE",
    "count_WA",
    "count_reduced_terms",
    "interpolate_numerical",
    "rank_dimension",
    "grid_csv",
]

DEFAULT_CAP = 10 ** 6


class CapExceeded(RuntimeError):
    pass


class InterpolationError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(int(x) for x in self.lower))
        object.__setattr__(self, "upper", tuple(int(x) for x in self.upper))
        if len(self.lower) != len(self.upper):
            raise ValueError("grid corners of different length")
        if any(x < 0 for x in self.lower) or any(a > b for a, b in zip(self.lower, self.upper)):
            raise ValueError(f"invalid grid {self.lower}..{self.upper}")

    def points(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lower, self.upper)))

    def size(self) -> int:
        out = 1
        for a, b in zip(self.lower, self.upper):
            out *= b - a + 1
        return out

    def __str__(self):
        return f"{list(self.lower)}..{list(self.upper)}"


def _bounded_naturals(k: int, bound: int) -> Iterator[Tuple[int, ...]]:
    """Tuples in N^k with coordinate sum at most ``bound``, by increasing sum."""
    if k == 0:
        yield ()
        return
    for total in range(bound + 1):
        for bars in itertools.combinations(range(total + k - 1), k - 1):
            prev, out = -1, []
            for b in bars:
                out.append(b - prev - 1)
                prev = b
            out.append(total + k - 2 - prev)
            yield tuple(out)


def _bounded_integers(k: int, bound: int) -> Iterator[Tuple[int, ...]]:
    for mags in _bounded_naturals(k, bound):
        nz = [i for i, x in enumerate(mags) if x]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            out = list(mags)
            for i, s in zip(nz, signs):
                out[i] *= s
            yield tuple(out)


def lambda_size(partition: Partition, bounds: Sequence[int]) -> int:
    out = 1
    for mk, r in zip(partition.block_sizes, bounds):
        out *= comb(r + mk, mk)
    n, r = partition.n, bounds[-1]
    out *= sum(2 ** i * comb(n, i) * comb(r, i) for i in range(n + 1))
    return out


def enumerate_lambda(partition: Partition, bounds: Sequence[int],
                     cap: int = DEFAULT_CAP) -> Iterator[LambdaMonomial]:
    """Every element of the truncation ``Lambda(r_1..r_{p+1})`` exactly once."""
    bounds = tuple(bounds)
    if len(bounds) != partition.p + 1 or any(r < 0 for r in bounds):
        raise ValueError(f"bounds {bounds} do not fit {partition}")
    size = lambda_size(partition, bounds)
    if size > cap:
        raise CapExceeded(f"truncation has {size} elements, cap is {cap}")
    blocks = [list(_bounded_naturals(mk, r)) for mk, r in zip(partition.block_sizes, bounds)]
    shifts = list(_bounded_integers(partition.n, bounds[-1]))
    for parts in itertools.product(*blocks):
        delta = tuple(itertools.chain.from_iterable(parts))
        for s in shifts:
            yield LambdaMonomial(delta, s)


def _natural_box(blocks: Sequence[int], bounds: Sequence[int]):
    per = [list(_bounded_naturals(mk, r)) for mk, r in zip(blocks, bounds)]
    for parts in itertools.product(*per):
        yield tuple(itertools.chain.from_iterable(parts))


def count_VE(E: Iterable[Sequence[int]], blocks: Sequence[int], bounds: Sequence[int],
             cap: int = DEFAULT_CAP) -> int:
    """Points of N^m with block sums ``<= r`` that dominate no point of ``E``."""
    E = [tuple(e) for e in E]
    size = 1
    for mk, r in zip(blocks, bounds):
        size *= comb(r + mk, mk)
    if size > cap:
        raise CapExceeded(f"{size} points exceed cap {cap}")
    count = 0
    for x in _natural_box(blocks, bounds):
        if not any(all(a <= b for a, b in zip(e, x)) for e in E):
            count += 1
    return count


def _below(a: Sequence[int], x: Sequence[int], m: int) -> bool:
    """``a`` precedes ``x``: product order on N^m and same-orthant magnitude order on Z^n."""
    if any(p > q for p, q in zip(a[:m], x[:m])):
        return False
    for f, g in zip(a[m:], x[m:]):
        if f * g < 0 or abs(f) > abs(g):
            return False
    return True


def count_WA(A: Iterable[Sequence[int]], partition: Partition, bounds: Sequence[int],
             cap: int = DEFAULT_CAP) -> int:
    A = [tuple(a) for a in A]
    m = partition.m
    count = 0
    for lam in enumerate_lambda(partition, bounds, cap):
        x = lam.delta + lam.sigma
        if not any(_below(a, x, m) for a in A):
            count += 1
    return count


def count_reduced_terms(table, bounds: Sequence[int], cap: int = DEFAULT_CAP) -> int:
    """Terms in the truncation that no leader can eliminate within the bounds.

    ``table`` supplies ``partition``, ``num_generators`` and rows with
    ``generator``, ``v`` and ``b``. A term counts when it is a multiple of no
    sigma-leader, or when for every leader ``v`` dividing it the cofactor
    ``lam`` pushes some block leader past its bound.
    """
    part = table.partition
    p = part.p
    lams = list(enumerate_lambda(part, bounds, cap))
    count = 0
    for k in range(table.num_generators):
        rows = [r for r in table.rows if r.generator == k]
        for lam in lams:
            free = True
            for r in rows:
                q = quotient(r.v, lam)
                if q is None:
                    continue
                if all(order_component(q, j + 1, part) + r.b[j] <= bounds[j] for j in range(p)):
                    free = False
                    break
            if free:
                count += 1
    return count


def _forward_differences(values: Mapping[Tuple[int, ...], int], lo: Sequence[int],
                         caps: Sequence[int]) -> Dict[Tuple[int, ...], Fraction]:
    table = {}
    for idx in itertools.product(*(range(c + 1) for c in caps)):
        pt = tuple(a + i for a, i in zip(lo, idx))
        if pt not in values:
            raise InterpolationError(f"missing grid value at {pt}")
        table[idx] = Fraction(values[pt])
    for axis, c in enumerate(caps):
        for level in range(1, c + 1):
            for idx in sorted(table, key=lambda i: -i[axis]):
                if idx[axis] >= level:
                    prev = idx[:axis] + (idx[axis] - 1,) + idx[axis + 1:]
                    table[idx] = table[idx] - table[prev]
    return table


def interpolate_numerical(values: Mapping[Tuple[int, ...], int], caps: Sequence[int],
                          lo: Sequence[int]) -> NumericalPolynomial:
    """The polynomial with degree ``<= caps[j]`` in ``t_j`` through the grid values.

    Uses the box ``lo .. lo + caps``; every other supplied point is checked.
    """
    caps, lo = tuple(caps), tuple(lo)
    nv = len(caps)
    diffs = _forward_differences(values, lo, caps)
    poly = NumericalPolynomial.zero(nv)
    for idx, d in diffs.items():
        if d == 0:
            continue
        term = NumericalPolynomial.constant(nv, d)
        for j, i in enumerate(idx):
            if i:
                term = term * binomial_term(nv, j, -lo[j], i)
        poly = poly + term
    for pt in sorted(values):
        if poly(*pt) != values[pt]:
            raise InterpolationError(
                f"values are not a polynomial with caps {caps}: mismatch at {pt}"
            )
    return poly


def _echelon_rank(rows: Iterable[Dict], key) -> int:
    pivots: Dict = {}
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            col = max(row, key=key)
            piv = pivots.get(col)
            if piv is None:
                lead = row[col]
                pivots[col] = {c: v / lead for c, v in row.items()}
                break
            f = row[col]
            for c, v in piv.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def rank_dimension(polys, num_generators: int, partition: Partition, bounds: Sequence[int],
                   margin: int = 2, cap: int = 200000) -> int:
    """Transcendence degree of the truncated extension by plain linear algebra.

    Counts terms of ``Lambda(r) Y`` minus the dimension of the part of the
    span of ``{lam * A}`` (``lam`` in ``Lambda(r + margin)``) supported inside
    ``Lambda(r) Y``. Rational coefficients only; the result can only
    decrease towards the true value as ``margin`` grows.
    """
    from .linpoly import apply

    bounds = tuple(bounds)
    inner = set()
    for lam in enumerate_lambda(partition, bounds, cap):
        for k in range(num_generators):
            inner.add(Term(lam, k))
    wide = tuple(r + margin for r in bounds)
    rows = []
    for lam in enumerate_lambda(partition, wide, cap):
        for A in polys:
            if A.model.name != "rational":
                raise ValueError("rank oracle needs rational coefficients")
            P = apply(lam, A)
            rows.append(dict(P.terms))
    def key(u):
        return (u.generator, u.monomial.delta, u.monomial.sigma)
    full = _echelon_rank(rows, key)
    outside = _echelon_rank(({u: c for u, c in r.items() if u not in inner} for r in rows), key)
    return len(inner) - (full - outside)


def grid_csv(values: Mapping[Tuple[int, ...], int]) -> str:
    if not values:
        return ""
    k = len(next(iter(values)))
    lines = [",".join([f"r{i + 1}" for i in range(k)] + ["count"])]
    for pt in sorted(values):
        lines.append(",".join(str(x) for x in pt) + f",{values[pt]}")
    return "\n".join(lines) + "\n"
