import random

import pytest

from dsdim.coeffs import RATIONAL, SYMBOLIC, token
from dsdim.lambda_monoid import LambdaMonomial as L, Partition, Term
from dsdim.linpoly import (
    InconsistentSystem,
    LinearDSPolynomial as P,
    apply,
    autoreduce,
    charset_linear_system,
    charset_single,
    ideal_membership,
    is_autoreduced,
    is_coherent,
    is_reduced,
    leaders,
    rank_compare,
    reduce,
)
from randsys import random_linear

P11 = Partition((1,), 1)


def T(d, s=(), g=0):
    return Term(L(tuple(d), tuple(s)), g)


def y(d, s):
    return T((d,), (s,))


def ex511(model=RATIONAL):
    a = token("a", L.identity(1, 1)) if model is SYMBOLIC else 1
    return P({y(0, 1): 1, y(1, 0): -1}, -a, partition=P11, model=model)


def test_apply_rational_and_symbolic():
    alpha = L((0,), (1,))
    assert apply(alpha, ex511()) == P({y(0, 2): 1, y(1, 1): -1}, -1, partition=P11)
    img = apply(alpha, ex511(SYMBOLIC))
    assert img.constant == -token("a", alpha)
    assert img.terms == {y(0, 2): 1, y(1, 1): -1}
    d = apply(L((1,), (0,)), P({y(0, 0): 1}, 3, partition=P11))
    assert d == P({y(1, 0): 1}, 0, partition=P11)


def test_apply_leibniz_on_symbols():
    a = token("a", L.identity(1, 1))
    A = P({y(0, 0): a}, 0, partition=P11, model=SYMBOLIC)
    out = apply(L((1,), (0,)), A)
    assert out.terms[y(1, 0)] == a
    assert out.terms[y(0, 0)] == token("a", L((1,), (0,)))


def test_leaders_examples():
    v, us = leaders(ex511())
    assert v == y(0, 1) and us == (y(1, 0),)
    A2 = P({y(1, -1): 1, y(0, 0): -1}, 1, partition=P11)
    v, us = leaders(A2)
    assert v == us[0] == y(1, -1)
    part = Partition((1, 1, 1), 0)
    g = P({T((2, 1, 0)): 1, T((0, 2, 1)): 1, T((1, 0, 2)): 1}, partition=part)
    v, us = leaders(g)
    assert v == T((2, 1, 0))
    assert us == (T((2, 1, 0)), T((0, 2, 1)), T((1, 0, 2)))
    with pytest.raises(ValueError):
        leaders(P({}, 5, partition=P11))


def test_rank_compare():
    A = ex511()
    A2 = P({y(1, -1): 1, y(0, 0): -1}, 1, partition=P11)
    assert rank_compare(A, A2) == -1
    assert rank_compare(P({}, 2, partition=P11), A) == -1
    assert rank_compare(A, A) == 0


def test_is_reduced_examples():
    A = ex511()
    assert is_reduced(P({y(1, 1): 1}, partition=P11), A)
    # the cofactor alpha raises ord_1 of delta*y above ord_1(alpha^2 y) = 0
    assert is_reduced(P({y(0, 2): 1}, partition=P11), A)
    assert not is_reduced(P({y(0, 2): 1, y(1, 0): 1}, partition=P11), A)
    assert is_reduced(P({}, 7, partition=P11), A)


def _check_certificate(B, sigma, B0, cert):
    assert (B.scale(cert.J) - B0) == cert.expand(sigma)


def test_reduce_examples():
    A = ex511()
    cs = charset_single(A)
    B = P({y(0, 2): 1, y(1, 0): 1}, partition=P11)
    B0, cert = reduce(B, cs)
    assert B0 == P({y(1, 1): 1, y(1, 0): 1}, 1, partition=P11)
    _check_certificate(B, cs, B0, cert)
    C = P({y(0, 2): 1}, partition=P11)
    C0, cert = reduce(C, cs)
    assert C0 == C and cert.J == 1
    assert reduce(A, [A])[0].is_zero()


def test_reduce_rejects_non_autoreduced():
    A = ex511()
    with pytest.raises(ValueError, match="autoreduced"):
        reduce(A, [A, apply(L((0,), (1,)), A)])


def test_autoreduce_examples():
    A = ex511()
    out = autoreduce([A, apply(L((0,), (1,)), A)])
    assert len(out) == 1 and out[0] == A
    cs = charset_single(A)
    assert autoreduce(cs) == cs
    part = Partition((1,), 0)
    S = [P({T((1,)): 1, T((0,)): -1}, partition=part), P({T((2,)): 1}, partition=part)]
    out = autoreduce(S)
    assert is_autoreduced(out)


def test_coherence_examples():
    assert is_coherent(charset_single(ex511()))
    part = Partition((1,), 0)
    assert is_coherent([P({T((1,)): 1, T((0,)): -1}, partition=part)])
    pair = [P({y(0, 1): 1, y(0, 0): -1}, partition=P11), P({y(0, 1): 1, y(0, 0): 1}, partition=P11)]
    assert not is_coherent(pair)


def test_charset_single_examples():
    A = ex511(SYMBOLIC)
    cs = charset_single(A)
    assert len(cs) == 2
    assert cs[0] == A
    assert cs[1] == apply(L((0,), (-1,)), A).scale(-1)
    part = Partition((1, 1, 1), 0)
    g = P({T((2, 1, 0)): 1, T((0, 2, 1)): 1, T((1, 0, 2)): 1}, partition=part)
    assert charset_single(g) == [g]
    p12 = Partition((1, 1), 1)
    g1 = P({T((0, 0), (1,)): 1, T((2, 0), (0,)): 1, T((0, 2), (0,)): 1},
           token("a", L.identity(2, 1)), partition=p12, model=SYMBOLIC)
    cs = charset_single(g1)
    assert cs == [g1, apply(L((0, 0), (-1,)), g1)]


def test_charset_linear_system_examples():
    A = ex511()
    assert charset_linear_system([A]) == charset_single(A)
    assert charset_linear_system([A, apply(L((0,), (1,)), A)]) == charset_single(A)
    part = Partition((1, 1), 0)
    gens = [P({T((1, 0)): 1, T((0, 0)): -1}, partition=part),
            P({T((0, 1)): 1, T((0, 0)): -1}, partition=part)]
    cs = charset_linear_system(gens)
    assert is_coherent(cs)
    assert all(ideal_membership(g, cs) for g in gens)


def test_inconsistent_system():
    gens = [P({y(0, 1): 1}, 0, partition=P11), P({y(0, 1): 1}, 1, partition=P11)]
    with pytest.raises(InconsistentSystem):
        charset_linear_system(gens)


def test_membership():
    A = ex511()
    cs = charset_single(A)
    lam = L((2,), (3,))
    assert ideal_membership(apply(lam, A).scale(5), cs)
    assert not ideal_membership(P({y(0, 0): 1}, partition=P11), cs)
    assert ideal_membership(P({}, 0, partition=P11), cs)


def test_symbolic_certificate_identity():
    A = ex511(SYMBOLIC)
    cs = charset_single(A)
    b = token("b", L.identity(1, 1))
    B = P({y(2, 3): b, y(1, 0): 1, y(0, -2): 2}, b, partition=P11, model=SYMBOLIC)
    B0, cert = reduce(B, cs)
    assert all(is_reduced(B0, C) for C in cs)
    diff = B.scale(cert.J) - B0 - cert.expand(cs)
    assert diff.is_zero()


def test_display():
    assert str(ex511(SYMBOLIC)) == "d[0] s[1] y1 - d[1] s[0] y1 - a"
    assert ex511().to_str(["u"]) == "d[0] s[1] u - d[1] s[0] u - 1"
    assert str(P({}, 0, partition=P11)) == "0"


def test_random_rank_preorder():
    rng = random.Random(3)
    part = Partition((1, 1), 1)
    polys = [random_linear(rng, part) for _ in range(25)]
    polys = [p for p in polys if not p.is_constant()]
    for a in polys:
        for b in polys:
            assert rank_compare(a, b) == -rank_compare(b, a)
            for c in polys[:6]:
                if rank_compare(a, b) <= 0 and rank_compare(b, c) <= 0:
                    assert rank_compare(a, c) <= 0
