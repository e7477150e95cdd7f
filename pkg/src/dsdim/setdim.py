"""Dimension polynomials of finite subsets of N^m and of N^m x Z^n."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence, Tuple

from .lambda_monoid import Partition
from .numpoly import NumericalPolynomial, binomial_term

Point = Tuple[int, ...]

__all__ = ["minimal_elements", "omega_E", "rho_embed", "phi_A", "stable_bounds"]


def _leq(a: Point, b: Point) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimal_elements(points: Iterable[Sequence[int]]) -> set:
    pts = {tuple(p) for p in points}
    return {p for p in pts if not any(q != p and _leq(q, p) for q in pts)}


def _block_sums(point: Point, blocks: Sequence[int]) -> Tuple[int, ...]:
    out = []
    start = 0
    for size in blocks:
        out.append(sum(point[start:start + size]))
        start += size
    return tuple(out)


@lru_cache(maxsize=4096)
def _shifted_product(blocks: Tuple[int, ...], sums: Tuple[int, ...]) -> NumericalPolynomial:
    k = len(blocks)
    out = NumericalPolynomial.constant(k, 1)
    for j, (mj, bj) in enumerate(zip(blocks, sums)):
        if mj:
            out = out * binomial_term(k, j, mj - bj, mj)
    return out


def omega_E(points: Iterable[Sequence[int]], blocks: Sequence[int]) -> NumericalPolynomial:
    """Polynomial counting the points of N^m not above any point of ``points``.

    ``blocks`` lists the block sizes ``m_1, ..., m_p``; the variable ``t_j``
    bounds the coordinate sum over block ``j``. Blocks of size 0 are allowed
    and contribute a constant factor.
    """
    blocks = tuple(int(b) for b in blocks)
    m = sum(blocks)
    E = sorted(minimal_elements(points))
    for e in E:
        if len(e) != m:
            raise ValueError(f"point {e} does not have {m} coordinates")
    total = NumericalPolynomial.zero(len(blocks))
    q = len(E)
    for l in range(q + 1):
        part = NumericalPolynomial.zero(len(blocks))
        for subset in combinations(E, l):
            if subset:
                top = tuple(max(col) for col in zip(*subset))
            else:
                top = (0,) * m
            part = part + _shifted_product(blocks, _block_sums(top, blocks))
        total = total + part if l % 2 == 0 else total - part
    return total


def rho_embed(a: Sequence[int], m: int) -> Point:
    """Map ``(a_1..a_m, f_1..f_n)`` to ``(a_1..a_m, f^+_1..f^+_n, f^-_1..f^-_n)``.

    Positive parts come first and negative parts second, matching the helper
    points ``e_i`` with ones at positions ``m+i`` and ``m+n+i``.
    """
    a = tuple(a)
    tail = a[m:]
    return a[:m] + tuple(max(f, 0) for f in tail) + tuple(max(-f, 0) for f in tail)


def pair_points(m: int, n: int) -> list:
    """The points ``e_1..e_n`` of N^(m+2n) that forbid using both signs of one coordinate."""
    out = []
    for i in range(n):
        e = [0] * (m + 2 * n)
        e[m + i] = 1
        e[m + n + i] = 1
        out.append(tuple(e))
    return out


def phi_A(points: Iterable[Sequence[int]], partition: Partition) -> NumericalPolynomial:
    """Polynomial counting points of N^m x Z^n not dominating any point of ``points``."""
    m, n = partition.m, partition.n
    B = [rho_embed(a, m) for a in points]
    for a in B:
        if len(a) != m + 2 * n:
            raise ValueError("point shape does not match the partition")
    B.extend(pair_points(m, n))
    return omega_E(B, partition.block_sizes + (2 * n,))


def stable_bounds(points: Iterable[Sequence[int]], blocks: Sequence[int]) -> Tuple[int, ...]:
    """Per-block coordinate-sum totals; counts agree with the polynomial at or beyond them."""
    out = [0] * len(blocks)
    for p in minimal_elements(points):
        for j, s in enumerate(_block_sums(p, blocks)):
            out[j] += s
    return tuple(out)
