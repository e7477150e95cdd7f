"""Affine-linear difference-differential polynomials and their characteristic sets.

A polynomial is ``sum c_u * u + c_0`` over terms ``u = lam * y_k``. Reduction
follows the several-orderings scheme: a term ``lam * v_A`` of ``B`` may be
eliminated with ``A`` only when ``lam ~ v_A`` and
``ord_j(lam * u_A^(j)) <= ord_j u_B^(j)`` for every block ``j``.
Because everything is linear, initials and separants coincide with the
coefficient of the sigma-leader and are inverted directly, so ``J = 1``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .coeffs import RATIONAL, CoefficientModel
from .lambda_monoid import (
    SIGMA,
    LambdaMonomial,
    Partition,
    Term,
    lcm_similar,
    order_component,
    quotient,
    similar,
    term_key,
)

log = logging.getLogger(__name__)

__all__ = [
    "LinearDSPolynomial",
    "Certificate",
    "InconsistentSystem",
    "CompletionError",
    "apply",
    "leaders",
    "rank_key",
    "rank_compare",
    "is_reduced",
    "reduce",
    "autoreduce",
    "is_autoreduced",
    "is_coherent",
    "coherence_witnesses",
    "charset_single",
    "charset_linear_system",
    "ideal_membership",
]


class InconsistentSystem(ValueError):
    """The ideal contains a nonzero constant."""


class CompletionError(RuntimeError):
    pass


class LinearDSPolynomial:
    __slots__ = ("terms", "constant", "model", "partition")

    def __init__(self, terms: Dict[Term, object], constant=0, *, partition: Partition,
                 model: CoefficientModel = RATIONAL):
        self.model = model
        self.partition = partition
        self.terms = {}
        for u, c in terms.items():
            if u.monomial.m != partition.m or u.monomial.n != partition.n:
                raise ValueError(f"term {u} does not fit {partition}")
            c = model.convert(c)
            if not model.is_zero(c):
                self.terms[u] = c
        c0 = model.convert(constant)
        self.constant = model.zero() if model.is_zero(c0) else c0

    # construction helpers

    @classmethod
    def zero(cls, partition: Partition, model: CoefficientModel = RATIONAL):
        return cls({}, 0, partition=partition, model=model)

    def _new(self, terms, constant):
        return LinearDSPolynomial(terms, constant, partition=self.partition, model=self.model)

    def is_zero(self) -> bool:
        return not self.terms and self.model.is_zero(self.constant)

    def is_constant(self) -> bool:
        return not self.terms

    def coefficient(self, u: Term):
        return self.terms.get(u, self.model.zero())

    def __add__(self, other: "LinearDSPolynomial") -> "LinearDSPolynomial":
        mdl = self.model
        out = dict(self.terms)
        for u, c in other.terms.items():
            out[u] = mdl.add(out[u], c) if u in out else c
        return self._new(out, mdl.add(self.constant, other.constant))

    def __neg__(self):
        mdl = self.model
        return self._new({u: mdl.neg(c) for u, c in self.terms.items()}, mdl.neg(self.constant))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinearDSPolynomial":
        mdl = self.model
        c = mdl.convert(c)
        return self._new({u: mdl.mul(c, v) for u, v in self.terms.items()},
                         mdl.mul(c, self.constant))

    def __eq__(self, other):
        if not isinstance(other, LinearDSPolynomial):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def apply(self, lam: LambdaMonomial) -> "LinearDSPolynomial":
        return apply(lam, self)

    def max_ord(self, block: int) -> int:
        """``ord_block`` of the block-leader, i.e. the largest ``ord_block`` of a term."""
        return max(order_component(u.monomial, block, self.partition) for u in self.terms)

    def sorted_terms(self, which=SIGMA) -> List[Term]:
        return sorted(self.terms, key=lambda u: term_key(u, which, self.partition), reverse=True)

    def to_str(self, names: Sequence[str] = None) -> str:
        mdl = self.model
        pieces = []
        for u in self.sorted_terms():
            name = names[u.generator] if names else f"y{u.generator + 1}"
            body = name if u.monomial.is_identity() else f"{u.monomial} {name}"
            pieces.append((self.terms[u], body))
        if not mdl.is_zero(self.constant):
            pieces.append((self.constant, None))
        if not pieces:
            return "0"
        out = []
        for i, (c, body) in enumerate(pieces):
            neg, mag, compound = mdl.signed_str(c)
            if compound:
                mag = f"({mag})"
            if body is None:
                text = mag
            elif mag == "1":
                text = body
            else:
                text = f"{mag}*{body}"
            if i == 0:
                out.append(("-" if neg else "") + text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LinearDSPolynomial({self.to_str()!r})"


def _apply_shift(A: LinearDSPolynomial, sigma: Tuple[int, ...]) -> LinearDSPolynomial:
    if not any(sigma):
        return A
    mdl, m = A.model, A.partition.m
    step = LambdaMonomial((0,) * m, sigma)
    terms = {u * step: mdl.shift(c, sigma, m) for u, c in A.terms.items()}
    return A._new(terms, mdl.shift(A.constant, sigma, m))


def _apply_derivation(A: LinearDSPolynomial, index: int) -> LinearDSPolynomial:
    mdl, m, n = A.model, A.partition.m, A.partition.n
    step = LambdaMonomial(tuple(1 if j == index else 0 for j in range(m)), (0,) * n)
    out: Dict[Term, object] = {}
    for u, c in A.terms.items():
        w = u * step
        out[w] = mdl.add(out[w], c) if w in out else c
        dc = mdl.derive(c, index, m, n)
        if not mdl.is_zero(dc):
            out[u] = mdl.add(out[u], dc) if u in out else dc
    return A._new(out, mdl.derive(A.constant, index, m, n))


def apply(lam: LambdaMonomial, A: LinearDSPolynomial) -> LinearDSPolynomial:
    """Apply the operator ``lam`` to ``A`` (Leibniz rule on coefficients)."""
    out = _apply_shift(A, lam.sigma)
    for index, k in enumerate(lam.delta):
        for _ in range(k):
            out = _apply_derivation(out, index)
    return out


def leaders(A: LinearDSPolynomial) -> Tuple[Term, Tuple[Term, ...]]:
    """The sigma-leader and the block leaders ``u^(1)..u^(p)`` of ``A``."""
    if A.is_constant():
        raise ValueError("a constant has no leaders")
    part = A.partition
    v = max(A.terms, key=lambda u: term_key(u, SIGMA, part))
    us = tuple(
        max(A.terms, key=lambda u, i=i: term_key(u, i, part)) for i in range(1, part.p + 1)
    )
    return v, us


def rank_key(A: LinearDSPolynomial) -> tuple:
    """Sort key realising the rank; constants get the empty key and sort first."""
    if A.is_constant():
        return ()
    v, us = leaders(A)
    part = A.partition
    ords = tuple(order_component(u.monomial, i + 1, part) for i, u in enumerate(us))
    return (term_key(v, SIGMA, part), 1, ords)


def rank_compare(A: LinearDSPolynomial, B: LinearDSPolynomial) -> int:
    a, b = rank_key(A), rank_key(B)
    return (a > b) - (a < b)


@dataclass
class _LeaderData:
    poly: LinearDSPolynomial
    v: Term
    b: Tuple[int, ...]  # ord_j of the block leaders

    @classmethod
    def of(cls, A: LinearDSPolynomial) -> "_LeaderData":
        v, us = leaders(A)
        part = A.partition
        return cls(A, v, tuple(order_component(u.monomial, i + 1, part) for i, u in enumerate(us)))


def _reducing_factor(w: Term, data: _LeaderData, bounds: Sequence[int], part: Partition):
    """The ``lam`` with ``w = lam * v`` that passes the block-order test, else ``None``."""
    if w.generator != data.v.generator:
        return None
    lam = quotient(data.v.monomial, w.monomial)
    if lam is None:
        return None
    for j in range(part.p):
        if order_component(lam, j + 1, part) + data.b[j] > bounds[j]:
            return None
    return lam


def is_reduced(B: LinearDSPolynomial, A: LinearDSPolynomial) -> bool:
    if A.is_constant():
        raise ValueError("reduction with respect to a constant is undefined")
    if B.is_constant():
        return True
    return _find_reducible(B, [_LeaderData.of(A)]) is None


def _find_reducible(B: LinearDSPolynomial, datas: Sequence[_LeaderData]):
    """Greatest (under ``<_sigma``) term of ``B`` that some element can eliminate."""
    if B.is_constant():
        return None
    part = B.partition
    bounds = [B.max_ord(j + 1) for j in range(part.p)]
    # prefer the element with the largest sigma-leader
    order = sorted(range(len(datas)), key=lambda i: term_key(datas[i].v, SIGMA, part),
                   reverse=True)
    for w in B.sorted_terms(SIGMA):
        for i in order:
            lam = _reducing_factor(w, datas[i], bounds, part)
            if lam is not None:
                return w, i, lam
    return None


@dataclass
class Certificate:
    """``J * B - B0 = sum_i sum_lam coeff * lam(A_i)``; ``J`` is always 1 here."""

    J: object
    multipliers: List[Dict[LambdaMonomial, object]] = field(default_factory=list)

    def expand(self, sigma: Sequence[LinearDSPolynomial]) -> LinearDSPolynomial:
        first = sigma[0]
        out = LinearDSPolynomial.zero(first.partition, first.model)
        for A, mult in zip(sigma, self.multipliers):
            for lam, c in mult.items():
                out = out + apply(lam, A).scale(c)
        return out


def _reduce(B: LinearDSPolynomial, sigma: Sequence[LinearDSPolynomial],
            max_steps: int = 100000):
    datas = [_LeaderData.of(A) for A in sigma]
    mdl = B.model
    cert = Certificate(mdl.one(), [dict() for _ in sigma])
    for _ in range(max_steps):
        hit = _find_reducible(B, datas)
        if hit is None:
            return B, cert
        w, i, lam = hit
        image = apply(lam, sigma[i])
        factor = mdl.div(B.terms[w], image.terms[w])
        B = B - image.scale(factor)
        mult = cert.multipliers[i]
        mult[lam] = mdl.add(mult[lam], factor) if lam in mult else factor
    raise CompletionError("reduction did not terminate within the step limit")


def is_autoreduced(sigma: Sequence[LinearDSPolynomial]) -> bool:
    if any(A.is_constant() for A in sigma):
        return False
    for i, B in enumerate(sigma):
        others = [A for j, A in enumerate(sigma) if j != i]
        if others and _find_reducible(B, [_LeaderData.of(A) for A in others]) is not None:
            return False
    return True


def reduce(B: LinearDSPolynomial, sigma: Sequence[LinearDSPolynomial]):
    """Reduce ``B`` modulo an autoreduced set; returns ``(B0, certificate)``."""
    sigma = list(sigma)
    if not is_autoreduced(sigma):
        raise ValueError("reduction requires an autoreduced set")
    if not sigma:
        return B, Certificate(B.model.one(), [])
    return _reduce(B, sigma)


def _monic(A: LinearDSPolynomial) -> LinearDSPolynomial:
    v, _ = leaders(A)
    return A.scale(A.model.div(A.model.one(), A.terms[v]))


def autoreduce(polys: Iterable[LinearDSPolynomial], max_steps: int = 10000):
    """Pairwise reduce until every element is reduced w.r.t. the others; sorted by rank."""
    pool = []
    for P in polys:
        if P.is_zero():
            continue
        if P.is_constant():
            raise InconsistentSystem(f"nonzero constant {P} in the ideal")
        pool.append(_monic(P))
    for _ in range(max_steps):
        pool.sort(key=rank_key)
        for i, A in enumerate(pool):
            others = pool[:i] + pool[i + 1:]
            if not others:
                continue
            if _find_reducible(A, [_LeaderData.of(X) for X in others]) is None:
                continue
            R, _ = _reduce(A, others)
            pool.pop(i)
            if not R.is_zero():
                if R.is_constant():
                    raise InconsistentSystem(f"nonzero constant {R} in the ideal")
                pool.append(_monic(R))
            break
        else:
            return sorted(pool, key=rank_key)
    raise CompletionError("autoreduction did not stabilise")


def _sigma_span(A: LinearDSPolynomial) -> int:
    sig = [u.monomial.sigma for u in A.terms]
    return max(
        (sum(abs(x - y) for x, y in zip(s, t)) for s in sig for t in sig), default=0
    )


def _shift_box(n: int, radius: int):
    for l in itertools.product(range(-radius, radius + 1), repeat=n):
        yield l


def coherence_witnesses(sigma: Sequence[LinearDSPolynomial]) -> List[LinearDSPolynomial]:
    """Finite family whose reduction to zero certifies coherence.

    Operator multiples ``lam * A_i`` use every shift with ``|l_j| <= R`` (``R``
    one more than the largest sigma-span in the set) combined with at most one
    derivation; overlap combinations use the lcm of each pair of similar
    sigma-leaders on the same indeterminate.
    """
    if not sigma:
        return []
    part = sigma[0].partition
    m, n = part.m, part.n
    R = 1 + max(_sigma_span(A) for A in sigma)
    deltas = [(0,) * m] + [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    out = []
    for A in sigma:
        for l in _shift_box(n, R):
            for d in deltas:
                lam = LambdaMonomial(d, l)
                if not lam.is_identity():
                    out.append(apply(lam, A))
    datas = [_LeaderData.of(A) for A in sigma]
    for i, j in itertools.combinations(range(len(sigma)), 2):
        vi, vj = datas[i].v, datas[j].v
        if vi.generator != vj.generator or not similar(vi.monomial, vj.monomial):
            continue
        w = lcm_similar(vi, vj)
        Pi = apply(quotient(vi.monomial, w.monomial), sigma[i])
        Pj = apply(quotient(vj.monomial, w.monomial), sigma[j])
        mdl = Pi.model
        one = mdl.one()
        out.append(Pi.scale(mdl.div(one, Pi.terms[w])) - Pj.scale(mdl.div(one, Pj.terms[w])))
    return out


def is_coherent(sigma: Sequence[LinearDSPolynomial]) -> bool:
    sigma = list(sigma)
    if not is_autoreduced(sigma):
        return False
    return all(_reduce(W, sigma)[0].is_zero() for W in coherence_witnesses(sigma))


def _minimal_multiples(A: LinearDSPolynomial, max_doublings: int = 6):
    """The sigma-shifts of ``A`` whose sigma-leaders are minimal under divisibility.

    Derivation multiples only multiply the sigma-leader, so only shifts can
    produce new minimal leaders. The shift box is grown until doubling it no
    longer changes the minimal leader set.
    """
    n = A.partition.n
    if n == 0:
        return [A]

    def scan(radius):
        found = {}
        for l in sorted(_shift_box(n, radius), key=lambda l: (sum(map(abs, l)), l)):
            P = _apply_shift(A, l)
            v, _ = leaders(P)
            found.setdefault(v, P)
        mins = {v: P for v, P in found.items()
                if not any(w != v and w.generator == v.generator
                           and quotient(w.monomial, v.monomial) is not None for w in found)}
        return mins

    radius = 1 + _sigma_span(A)
    current = scan(radius)
    for _ in range(max_doublings):
        wider = scan(2 * radius)
        if set(wider) == set(current):
            return list(current.values())
        radius *= 2
        current = wider
    raise CompletionError("minimal multiples did not stabilise")


def _complete(pool: List[LinearDSPolynomial], originals: Sequence[LinearDSPolynomial],
              max_rounds: int) -> List[LinearDSPolynomial]:
    for rnd in range(max_rounds):
        sigma = autoreduce(pool)
        if not sigma:
            return sigma
        new = []
        for W in list(originals) + coherence_witnesses(sigma):
            R, _ = _reduce(W, sigma)
            if not R.is_zero():
                if R.is_constant():
                    raise InconsistentSystem(f"nonzero constant {R} in the ideal")
                new.append(R)
        if not new:
            log.debug("coherent after %d round(s), %d element(s)", rnd + 1, len(sigma))
            return sigma
        pool = sigma + new
    raise CompletionError(
        f"no coherent autoreduced set after {max_rounds} rounds; "
        f"last set has {len(pool)} element(s)"
    )


def charset_single(A: LinearDSPolynomial, max_rounds: int = 1000) -> List[LinearDSPolynomial]:
    """Characteristic set of the ideal generated by one linear polynomial."""
    if A.is_constant():
        raise ValueError("generator must be non-constant")
    return _complete(_minimal_multiples(A), [A], max_rounds)


def charset_linear_system(generators: Sequence[LinearDSPolynomial],
                          max_rounds: int = 1000) -> List[LinearDSPolynomial]:
    """Characteristic set of the ideal generated by several linear polynomials."""
    gens = [g for g in generators if not g.is_zero()]
    for g in gens:
        if g.is_constant():
            raise InconsistentSystem(f"constant generator {g}")
    pool = []
    for g in gens:
        pool.extend(_minimal_multiples(g))
    return _complete(pool, gens, max_rounds)


def ideal_membership(B: LinearDSPolynomial, charset: Sequence[LinearDSPolynomial]) -> bool:
    if B.is_zero():
        return True
    if not charset:
        return False
    R, _ = reduce(B, charset)
    return R.is_zero()
