"""Power products of derivations and automorphisms, their orders and orderings.

A monomial ``d[k1,...,km] s[l1,...,ln]`` stands for
``delta_1^k1 ... delta_m^km alpha_1^l1 ... alpha_n^ln`` where the derivation
exponents are natural numbers and the automorphism exponents are integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

__all__ = [
    "SIGMA",
    "Partition",
    "LambdaMonomial",
    "Term",
    "Orthant",
    "order_component",
    "total_order",
    "order_key",
    "compare",
    "compare_terms",
    "similar",
    "divides",
    "quotient",
    "term_divides",
    "lcm_monomials",
    "lcm_similar",
]

#: order id used for the automorphism-first ordering ``<_sigma``
SIGMA = "sigma"

OrderId = Union[int, str]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Split of the derivations into ``p`` consecutive blocks plus ``n`` automorphisms."""

    block_sizes: Tuple[int, ...]
    num_autos: int = 0

    def __post_init__(self):
        object.__setattr__(self, "block_sizes", tuple(int(b) for b in self.block_sizes))
        if not self.block_sizes:
            raise ValueError("partition needs at least one block")
        if any(b <= 0 for b in self.block_sizes):
            raise ValueError(f"block sizes must be positive, got {self.block_sizes}")
        if self.num_autos < 0:
            raise ValueError("number of automorphisms must be >= 0")

    @property
    def p(self) -> int:
        return len(self.block_sizes)

    @property
    def m(self) -> int:
        return sum(self.block_sizes)

    @property
    def n(self) -> int:
        return self.num_autos

    def block_ranges(self) -> Tuple[range, ...]:
        out = []
        start = 0
        for size in self.block_sizes:
            out.append(range(start, start + size))
            start += size
        return tuple(out)

    def caps(self) -> Tuple[int, ...]:
        """Degree caps ``(m_1, ..., m_p, n)`` of dimension polynomials."""
        return self.block_sizes + (self.num_autos,)


@dataclass(frozen=True, order=True)
class LambdaMonomial:
    delta: Tuple[int, ...]
    sigma: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(k) for k in self.delta))
        object.__setattr__(self, "sigma", tuple(int(l) for l in self.sigma))
        if any(k < 0 for k in self.delta):
            raise ValueError(f"derivation exponents must be natural: {self.delta}")

    @classmethod
    def identity(cls, m: int, n: int = 0) -> "LambdaMonomial":
        return cls((0,) * m, (0,) * n)

    @property
    def m(self) -> int:
        return len(self.delta)

    @property
    def n(self) -> int:
        return len(self.sigma)

    def is_identity(self) -> bool:
        return not any(self.delta) and not any(self.sigma)

    def delta_part(self) -> "LambdaMonomial":
        return LambdaMonomial(self.delta, (0,) * self.n)

    def sigma_part(self) -> "LambdaMonomial":
        return LambdaMonomial((0,) * self.m, self.sigma)

    def _check(self, other: "LambdaMonomial") -> None:
        if self.m != other.m or self.n != other.n:
            raise DimensionMismatch(
                f"monomials of shapes ({self.m},{self.n}) and ({other.m},{other.n})"
            )

    def __mul__(self, other: "LambdaMonomial") -> "LambdaMonomial":
        if not isinstance(other, LambdaMonomial):
            return NotImplemented
        self._check(other)
        return LambdaMonomial(
            tuple(a + b for a, b in zip(self.delta, other.delta)),
            tuple(a + b for a, b in zip(self.sigma, other.sigma)),
        )

    def ord_sigma(self) -> int:
        return sum(abs(l) for l in self.sigma)

    def ord_delta(self) -> int:
        return sum(self.delta)

    def ord(self) -> int:
        return self.ord_delta() + self.ord_sigma()

    def __str__(self) -> str:
        if self.is_identity():
            return "1"
        d = ",".join(str(k) for k in self.delta)
        s = ",".join(str(l) for l in self.sigma)
        return f"d[{d}] s[{s}]"


def multiply(a: LambdaMonomial, b: LambdaMonomial) -> LambdaMonomial:
    return a * b


@dataclass(frozen=True, order=True)
class Term:
    """A monomial attached to the indeterminate (or free generator) ``generator``.

    Generators are indexed from 0.
    """

    monomial: LambdaMonomial
    generator: int = 0

    def __mul__(self, other: LambdaMonomial) -> "Term":
        return Term(self.monomial * other, self.generator)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.monomial}*y{self.generator + 1}"


@dataclass(frozen=True)
class Orthant:
    """Sign pattern of one orthant of ``Z^n``; ``True`` means the nonnegative half."""

    signs: Tuple[bool, ...]

    def contains(self, sigma_exp: Sequence[int]) -> bool:
        return all((l >= 0) if pos else (l <= 0) for pos, l in zip(self.signs, sigma_exp))

    @classmethod
    def all(cls, n: int) -> Tuple["Orthant", ...]:
        # first orthant is N^n
        out = []
        for mask in range(2 ** n):
            out.append(cls(tuple(not (mask >> j) & 1 for j in range(n))))
        return tuple(out)


def order_component(lam: LambdaMonomial, which: OrderId, partition: Partition) -> int:
    """``ord_i`` for a 1-based block index ``i``, or ``ord_sigma`` for ``SIGMA``."""
    if which == SIGMA:
        return lam.ord_sigma()
    if not isinstance(which, int) or not 1 <= which <= partition.p:
        raise ValueError(f"invalid block index {which!r} for p={partition.p}")
    rng = partition.block_ranges()[which - 1]
    return sum(lam.delta[j] for j in rng)


def total_order(lam: LambdaMonomial) -> int:
    return lam.ord()


@lru_cache(maxsize=1 << 16)
def order_key(lam: LambdaMonomial, which: OrderId, partition: Partition) -> Tuple[int, ...]:
    """The integer tuple whose lexicographic comparison defines ``<_which``."""
    if lam.m != partition.m or lam.n != partition.n:
        raise DimensionMismatch(f"monomial {lam} does not fit {partition}")
    ords = [order_component(lam, i, partition) for i in range(1, partition.p + 1)]
    absl = tuple(abs(l) for l in lam.sigma)
    if which == SIGMA:
        return (lam.ord_sigma(), lam.ord(), *ords, *absl, *lam.sigma, *lam.delta)
    i = which
    if not isinstance(i, int) or not 1 <= i <= partition.p:
        raise ValueError(f"invalid order id {which!r}")
    rng = partition.block_ranges()[i - 1]
    others = ords[: i - 1] + ords[i:]
    inside = tuple(lam.delta[j] for j in rng)
    before = lam.delta[: rng.start]
    after = lam.delta[rng.stop:]
    return (ords[i - 1], lam.ord(), *others, lam.ord_sigma(), *inside, *before, *after,
            *absl, *lam.sigma)


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def compare(lam: LambdaMonomial, mu: LambdaMonomial, which: OrderId, partition: Partition) -> int:
    """Return -1, 0 or 1 as ``lam`` is less than, equal to or greater than ``mu``."""
    return _cmp(order_key(lam, which, partition), order_key(mu, which, partition))


def term_key(u: Term, which: OrderId, partition: Partition) -> Tuple[int, ...]:
    return order_key(u.monomial, which, partition) + (u.generator,)


def compare_terms(u: Term, v: Term, which: OrderId, partition: Partition) -> int:
    return _cmp(term_key(u, which, partition), term_key(v, which, partition))


def _sign_compatible(a: int, b: int) -> bool:
    return not ((a > 0 and b < 0) or (a < 0 and b > 0))


def similar(a: LambdaMonomial, b: LambdaMonomial) -> bool:
    """True iff the automorphism parts of ``a`` and ``b`` share an orthant."""
    if a.n != b.n:
        raise DimensionMismatch("different numbers of automorphisms")
    return all(_sign_compatible(x, y) for x, y in zip(a.sigma, b.sigma))


def quotient(a: LambdaMonomial, b: LambdaMonomial):
    """The ``lam`` with ``b = lam * a`` and ``lam ~ a``, or ``None`` if ``a`` does not divide ``b``."""
    a._check(b)
    if not similar(a, b):
        return None
    dq = tuple(y - x for x, y in zip(a.delta, b.delta))
    if any(k < 0 for k in dq):
        return None
    sq = []
    for x, y in zip(a.sigma, b.sigma):
        if abs(y) < abs(x):
            return None
        sq.append(y - x)
    lam = LambdaMonomial(dq, tuple(sq))
    if not similar(lam, a):
        return None
    return lam


def divides(a: LambdaMonomial, b: LambdaMonomial) -> bool:
    return quotient(a, b) is not None


def term_divides(u: Term, v: Term) -> bool:
    return u.generator == v.generator and divides(u.monomial, v.monomial)


def lcm_monomials(monos: Iterable[LambdaMonomial]) -> LambdaMonomial:
    """Least common multiple of pairwise similar monomials."""
    monos = list(monos)
    if not monos:
        raise ValueError("lcm of an empty family")
    first = monos[0]
    for b in monos[1:]:
        first._check(b)
        for c in monos:
            if not similar(b, c):
                raise ValueError(f"{b} and {c} are not similar")
    delta = tuple(max(col) for col in zip(*(x.delta for x in monos)))
    sigma = []
    for col in zip(*(x.sigma for x in monos)):
        big = max(abs(l) for l in col)
        sign = -1 if any(l < 0 for l in col) else 1
        sigma.append(sign * big)
    return LambdaMonomial(delta, tuple(sigma))


def lcm_similar(u: Term, v: Term) -> Term:
    if u.generator != v.generator:
        raise ValueError("terms on different generators have no common multiple")
    if not similar(u.monomial, v.monomial):
        raise ValueError(f"terms {u} and {v} are not similar")
    return Term(lcm_monomials([u.monomial, v.monomial]), u.generator)
