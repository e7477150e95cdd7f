"""End-to-end acceptance checks; each test records one PASS/FAIL line."""
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import conftest
from dsdim import dmod
from dsdim.cli import main
from dsdim.dimpoly import dimension_polynomial, stability_offset, system_dimension_polynomial
from dsdim.lambda_monoid import LambdaMonomial, Partition, Term
from dsdim.linpoly import (
    LinearDSPolynomial,
    apply,
    charset_linear_system,
    charset_single,
    is_reduced,
    reduce,
)
from dsdim.numpoly import NumericalPolynomial as NP, binomial_term, canonical_coeffs, degrees
from dsdim.oracle import (
    GridSpec,
    count_reduced_terms,
    count_VE,
    count_WA,
    enumerate_lambda,
    interpolate_numerical,
)
from dsdim.setdim import omega_E, pair_points, phi_A, rho_embed, stable_bounds
from dsdim.sysfile import System, parse_system
from randsys import random_linear, random_partition


@contextmanager
def criterion(k, title, limit=None):
    start = time.perf_counter()
    info = {"note": ""}
    try:
        yield info
    except BaseException as exc:
        conftest.ACCEPTANCE_LINES[k] = f"criterion {k} FAIL  {title}: {exc!r}"[:300]
        print(conftest.ACCEPTANCE_LINES[k])
        raise
    took = time.perf_counter() - start
    ok = limit is None or took < limit
    extra = f" [{took:.2f}s" + (f" < {limit}s]" if limit else "]")
    conftest.ACCEPTANCE_LINES[k] = (f"criterion {k} {'PASS' if ok else 'FAIL'}  {title}"
                                    f"{extra} {info['note']}".rstrip())
    print(conftest.ACCEPTANCE_LINES[k])
    assert ok, f"criterion {k} took {took:.2f}s, limit {limit}s"


def tv(k):
    return [NP.variable(k, i) for i in range(k)]


def test_criterion_1_shift_system(samples):
    with criterion(1, "one-derivation one-shift system end to end", limit=1.0) as info:
        system = parse_system(str(samples / "ex511.sys"))
        A = system.polys[0]
        cs = charset_linear_system(system.polys)
        alpha_inv = LambdaMonomial((0,), (-1,))
        assert len(cs) == 2
        assert cs[0] == A
        assert cs[1] == apply(alpha_inv, A).scale(-1)
        rep = dimension_polynomial(cs, 1, system.partition, check_oracle=True)
        t1, t2 = tv(2)
        assert rep.u1_part == t1 + t2 + 1
        assert rep.u2_part == t2
        assert rep.phi == t1 + t2 * 2 + 1
        info["note"] = f"Phi = {rep.phi.to_str(['t1', 't2'])}"


def test_criterion_2_two_block_system(samples):
    with criterion(2, "two-block system with one shift end to end", limit=5.0) as info:
        system = parse_system(str(samples / "ex512.sys"))
        rep = system_dimension_polynomial(system, check_oracle=True)
        t1, t2, t3 = tv(3)
        assert rep.u1_part == t1 * t2 + t2 * t3 * 2 + t1 + t2 + t3 * 2 + 1
        assert rep.u2_part == t1 * t3 * 4 + t2 * t3 * 2 - t3 * 2
        assert rep.phi == t1 * t2 + t1 * t3 * 4 + t2 * t3 * 4 + t1 + t2 + 1
        info["note"] = f"Phi = {rep.phi.to_str(['t1', 't2', 't3'])}"


def _g68(a, b, c, part):
    def e(d):
        return Term(LambdaMonomial(tuple(d), ()), 0)
    return dmod.element({e((a + c, b, 0)): 1, e((0, a + b, c)): 1, e((a, 0, b + c)): 1}, part)


@pytest.mark.parametrize("abc", [(1, 1, 1), (1, 2, 3), (2, 1, 1)])
def test_criterion_3_three_term_relation(abc):
    a, b, c = abc
    key = 3 + {(1, 1, 1): 0.1, (1, 2, 3): 0.2, (2, 1, 1): 0.3}[abc]
    with criterion(key, f"three-term module relation (a,b,c)={abc}", limit=10.0):
        P3 = Partition((1, 1, 1), 0)
        rep = dmod.gb_dimension_polynomial(dmod.ModulePresentation(P3, 1, [_g68(a, b, c, P3)]))
        t = tv(4)
        top = t[0] * t[1] * (b + c) + t[0] * t[2] * (a + b) + t[1] * t[2] * (a + c)
        assert rep.phi.homogeneous_part(2) == top
        lo = stability_offset(rep.table)
        caps = P3.caps()
        grid = GridSpec(lo, tuple(x + k + 1 for x, k in zip(lo, caps)))
        values = {r: count_reduced_terms(rep.table, r) for r in grid.points()}
        assert interpolate_numerical(values, caps, lo) == rep.phi
        P1 = Partition((3,), 0)
        rep1 = dmod.gb_dimension_polynomial(dmod.ModulePresentation(P1, 1, [_g68(a, b, c, P1)]))
        s = a + b + c
        assert rep1.phi == binomial_term(2, 0, 3, 3) - binomial_term(2, 0, 3 - s, 3)


def test_criterion_4_maximal_elements(samples, capsys):
    with criterion(4, "maximal elements set") as info:
        assert main(["maximal", str(samples / "sigma_prime.pts")]) == 0
        got = {tuple(int(x) for x in line.split())
               for line in capsys.readouterr().out.splitlines() if line.strip()}
        assert got == {(3, 0, 2), (3, 1, 0), (1, 1, 6), (1, 2, 0)}
        info["note"] = str(sorted(got, reverse=True))


def _random_blocks(rng, m):
    p = rng.randint(1, min(m, 3))
    cuts = sorted(rng.sample(range(1, m), p - 1))
    return tuple(b - a for a, b in zip([0] + cuts, cuts + [m]))


def _box(lo, width=1):
    return GridSpec(lo, tuple(x + width for x in lo)).points()


def test_criterion_5_setdim_suite_a():
    with criterion(5, "suite A: set polynomials vs enumeration", limit=60.0) as info:
        rng = random.Random(5)
        checked = 0
        for _ in range(50):
            m = rng.randint(1, 4)
            blocks = _random_blocks(rng, m)
            E = {tuple(rng.randint(0, 4) for _ in range(m)) for _ in range(rng.randint(0, 4))}
            phi = omega_E(E, blocks)
            for r in _box(stable_bounds(E, blocks)):
                assert phi(*r) == count_VE(E, blocks, r), (E, blocks, r)
                checked += 1
        for _ in range(30):
            m, n = rng.randint(1, 2), rng.randint(0, 2)
            part = Partition(_random_blocks(rng, m), n)
            A = {tuple(rng.randint(0, 3) for _ in range(m))
                 + tuple(rng.randint(-3, 3) for _ in range(n))
                 for _ in range(rng.randint(0, 3))}
            phi = phi_A(A, part)
            B = [rho_embed(a, m) for a in A] + pair_points(m, n)
            for r in _box(stable_bounds(B, part.block_sizes + (2 * n,))):
                assert phi(*r) == count_WA(A, part, r), (A, part, r)
                checked += 1
        info["note"] = f"{checked} grid points, 0 failures"


def test_criterion_6_structure_suite_b():
    with criterion(6, "suite B: empty sets, zero test, degree caps") as info:
        for blocks in [(1,), (2,), (1, 1), (2, 1), (1, 1, 1)]:
            phi = omega_E([], blocks)
            for r in GridSpec((0,) * len(blocks), (3,) * len(blocks)).points():
                assert phi(*r) == count_VE([], blocks, r)
        for blocks, n in [((1,), 1), ((1,), 2), ((2,), 1), ((1, 1), 1)]:
            part = Partition(blocks, n)
            phi = phi_A([], part)
            for r in GridSpec((0,) * (len(blocks) + 1), (3,) * (len(blocks) + 1)).points():
                assert phi(*r) == count_WA([], part, r)
        rng = random.Random(6)
        for _ in range(60):
            m = rng.randint(1, 3)
            blocks = _random_blocks(rng, m)
            E = {tuple(rng.randint(0, 2) for _ in range(m)) for _ in range(rng.randint(0, 3))}
            w = omega_E(E, blocks)
            assert w.is_zero() == ((0,) * m in E)
            per, _ = degrees(w)
            assert all(d <= c for d, c in zip(per, blocks))
            n = rng.randint(0, 2)
            part = Partition(blocks, n)
            A = {tuple(rng.randint(0, 1) for _ in range(m))
                 + tuple(rng.randint(-1, 1) for _ in range(n))
                 for _ in range(rng.randint(0, 3))}
            f = phi_A(A, part)
            assert f.is_zero() == ((0,) * (m + n) in A)
            per, _ = degrees(f)
            assert all(d <= c for d, c in zip(per, part.caps()))
        info["note"] = "closed forms on 4-point grids, 60 random sets"


def test_criterion_7_reduction_suite_c():
    with criterion(7, "suite C: reduction predicate and certificates") as info:
        rng = random.Random(7)
        reductions = multiples = 0
        while reductions < 100:
            part = random_partition(rng, max_m=2, max_n=1)
            A = random_linear(rng, part)
            if A.is_constant():
                continue
            cs = charset_single(A)
            for _ in range(5):
                B = random_linear(rng, part, terms=(1, 4), max_ord=4)
                B0, cert = reduce(B, cs)
                assert all(B0.is_constant() or is_reduced(B0, C) for C in cs)
                assert (B.scale(cert.J) - B0 - cert.expand(cs)).is_zero()
                reductions += 1
            bounds = (2,) * part.p + (1,)
            for C in cs:
                for lam in enumerate_lambda(part, bounds):
                    assert reduce(apply(lam, C), cs)[0].is_zero()
                    multiples += 1
        info["note"] = f"{reductions} reductions, {multiples} multiples reduced to 0"


def _lead_ok(phi, part):
    return canonical_coeffs(phi).get(part.caps(), 0) % 2 ** part.n == 0


def test_criterion_8_route_agreement_suite_d(samples):
    with criterion(8, "suite D: charset route equals module route") as info:
        systems = [parse_system(str(samples / f)) for f in
                   ("ex511.sys", "ex512.sys", "ex68_111.sys", "ex68_123.sys", "ex68_211.sys")]
        rng = random.Random(8)
        while len(systems) < 15:
            part = random_partition(rng, max_m=2, max_n=1)
            A = random_linear(rng, part)
            if A.is_constant():
                continue
            systems.append(System(part, ["y"], "rational", [A]))
        for system in systems:
            a = system_dimension_polynomial(system).phi
            b = dmod.gb_dimension_polynomial(dmod.kahler_module_of_linear_system(system)).phi
            assert a == b, system
            assert _lead_ok(a, system.partition)
        # a redundant extra generator leaves the polynomial unchanged
        for system in systems[5:]:
            (A,) = system.polys
            shift = LambdaMonomial((0,) * system.partition.m, (1,) * system.partition.n)
            extra = apply(shift, A) + apply(LambdaMonomial.identity(system.partition.m,
                                                                     system.partition.n), A)
            again = LinearDSPolynomial(extra.terms, extra.constant, partition=A.partition)
            cs = charset_linear_system([A, again])
            rep = dimension_polynomial(cs, 1, system.partition)
            assert rep.phi == system_dimension_polynomial(system).phi
        info["note"] = f"{len(systems)} systems"


CLI_SUITE = [
    ["dimpoly", "ex511.sys", "--check-oracle"],
    ["dimpoly", "ex512.sys", "--check-oracle"],
    ["dimpoly", "ex68_123.sys", "--check-oracle"],
    ["charset", "ex512.sys"],
    ["gbdim", "ex68_111.mod", "--check-oracle"],
    ["gbdim", "ex511.sys"],
    ["strength", "ex512.sys"],
    ["oracle", "ex511.sys"],
    ["maximal", "sigma_prime.pts"],
    ["setdim", "origin.pts", "--check-oracle"],
    ["zsetdim", "sigma_prime.pts", "--autos", "1", "--check-oracle"],
    ["dimpoly", "free.sys"],
]


def _run_suite(samples, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    out = []
    for argv in CLI_SUITE:
        args = [argv[0], str(samples / argv[1])] + argv[2:]
        res = subprocess.run([sys.executable, "-m", "dsdim"] + args, capture_output=True,
                             env=env, check=False)
        assert res.returncode == 0, (argv, res.stderr.decode())
        out.append(res.stdout)
    return out


def test_criterion_9_determinism(samples):
    with criterion(9, "determinism of the CLI suite") as info:
        first = _run_suite(samples, 1)
        second = _run_suite(samples, 2)
        assert first == second
        info["note"] = f"{len(CLI_SUITE)} commands byte-identical across two runs"
