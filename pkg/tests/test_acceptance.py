"""End-to-end acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a ``PASS``/``FAIL crit N`` line; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

import math
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

import oracles
from instanton_f2 import _kernels
from instanton_f2.dims import dim_f2, reduced_slopes, triangle_scan
from instanton_f2.froyshov import q3_surgery
from instanton_f2.knotdb import KnotRecord, default_table, mirror, validate
from instanton_f2.modalg import (
    det,
    diagonal,
    is_diagonal,
    is_divisibility_chain,
    matmul,
    psi_iso,
    snf,
    v_space,
)
from instanton_f2.obstruct import Verdict, su2_abelian_obstruction, torsion_free
from instanton_f2.propagate import propagate, twist_chain_graph
from instanton_f2.slope import BundleClass, Slope, bundle_classes, farey_triple

T, N = BundleClass.TRIVIAL, BundleClass.NONTRIVIAL
RESULTS: list[str] = []


@contextmanager
def criterion(n: int, what: str):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        RESULTS.append(f"FAIL crit {n}: {what} ({type(exc).__name__}: {exc})")
        raise
    RESULTS.append(f"PASS crit {n}: {what} [{time.perf_counter() - t0:.3f} s]")


@pytest.fixture(scope="module")
def db():
    return default_table()


def test_crit01_trefoil(db):
    with criterion(1, "trefoil dims 5 and 7, < 1 ms"):
        K = db["3_1"]
        t0 = time.perf_counter()
        a, b = dim_f2(K, Slope(-5, 1), T), dim_f2(K, Slope(-1, 1), T)
        elapsed = time.perf_counter() - t0
        assert (a, b) == (5, 7)
        assert elapsed < 1e-3, f"{elapsed * 1e3:.3f} ms"


def test_crit02_twist_family(db):
    with criterion(2, "twist knots 8m+1 / 8m-1 for m <= 100, < 10 ms"):
        t0 = time.perf_counter()
        for m in range(1, 101):
            assert dim_f2(db[f"K_{2 * m}"], Slope(1, 1), T) == 8 * m + 1
            assert dim_f2(db[f"K_{2 * m - 1}"], Slope(-1, 1), T) == 8 * m - 1
        elapsed = time.perf_counter() - t0
        assert elapsed < 1e-2, f"{elapsed * 1e3:.2f} ms"


def test_crit03_triangles(db):
    with criterion(3, "zero triangle violations on every fixture, q <= 8, |p| <= 64, < 10 s"):
        t0 = time.perf_counter()
        knots = db.fixture_knots()
        total = 0
        for K in knots:
            res = triangle_scan(K, 8, 64)
            assert not res.violations, f"{K.name}: {res.violations[0].describe()}"
            total += res.checked
            for s in reduced_slopes(64, 1, 8):
                for w in bundle_classes(s):
                    assert dim_f2(K, s, w).value % 2 == abs(s.p) % 2 or s.p == 0
        assert len(knots) > 10 and total > 0
        assert time.perf_counter() - t0 < 10


def _brute_parents(p, q):
    # every (c, d) with 0 < d < q and qc - pd = 1, found by search
    out = []
    for d in range(1, q):
        if (1 + p * d) % q == 0:
            out.append(((1 + p * d) // q, d))
    return out


def test_crit04_farey(db):
    with criterion(4, "Farey triples for 2 <= q <= 40, |p| <= 120 against search, < 5 s"):
        t0 = time.perf_counter()
        n = 0
        for q in range(2, 41):
            for p in range(-120, 121):
                if math.gcd(p, q) != 1:
                    continue
                tri = farey_triple(Slope(p, q))
                (a, b), (c, d), (e, f) = tri.left, tri.right, tri.excess
                assert [(c, d)] == _brute_parents(p, q)
                assert q * c - p * d == b * c - a * d == p * b - q * a == 1
                assert (a + c, b + d) == (p, q) and b > 0 and d > 0
                if b < d:
                    assert (e, f) == (c - a, d - b)
                elif b > d:
                    assert (e, f) == (a - c, b - d)
                else:
                    assert (e, f) == (1, 0)
                assert tri.violations() == []
                n += 1
        assert n > 5000 and time.perf_counter() - t0 < 5


def test_crit05_q3(db):
    with criterion(5, "q3 duality, sign-region monotonicity, +-1 exclusivity on 10^4 odd slopes"):
        rnd = random.Random(5)
        slopes = []
        while len(slopes) < 10_000:
            q = rnd.randint(1, 12)
            p = rnd.randrange(-301, 302, 2)
            if math.gcd(p, q) == 1:
                slopes.append(Slope(p, q))
        ordered = sorted(slopes, key=lambda s: s.value())
        for K in db.fixture_knots():
            if K.M is None:
                continue
            mK = mirror(K)
            vals = [q3_surgery(K, s) for s in ordered]
            for s, v in zip(ordered, vals):
                assert v == -q3_surgery(mK, -s)
                assert v in (-1, 0, 1)
                assert v >= 0 if s.value() < 0 else v <= 0
            neg = [v for s, v in zip(ordered, vals) if s.value() < 0]
            pos = [v for s, v in zip(ordered, vals) if s.value() > 0]
            assert all(x <= y for x, y in zip(neg, neg[1:]))
            assert all(x <= y for x, y in zip(pos, pos[1:]))
            assert not (1 in vals and -1 in vals)


def test_crit06_psi_oracle():
    with criterion(6, "500 random modules: psi bijective, profiles match exhaustive lifts, < 5 s"):
        rnd = random.Random(6)
        t0 = time.perf_counter()
        for _ in range(500):
            M = oracles.random_module(rnd, max_dim=16)
            iso = psi_iso(M)
            ker = oracles.brute_kernel(M)
            assert iso.bijective and 2**iso.kernel_dim == len(ker)
            cols = oracles.packed_columns(iso.matrix) if iso.matrix.shape[1] else np.zeros(0, np.int64)
            assert set(_kernels.span_elements(cols).tolist()) == ker
            assert v_space(M).profile == oracles.brute_profile(M)
        elapsed = time.perf_counter() - t0
        assert elapsed < 5, f"{elapsed:.2f} s"


def test_crit07_snf():
    with criterion(7, "500 random SNFs: UAV = D, divisibility chain, unit determinants"):
        rnd = random.Random(7)
        for _ in range(500):
            A = oracles.random_matrix(rnd, rnd.randint(1, 4), rnd.randint(1, 4), 3)
            U, D, V = snf(A)
            assert matmul(matmul(U, A), V) == D
            assert is_diagonal(D) and is_divisibility_chain(diagonal(D))
            assert det(U) == 1 == oracles.leibniz_det(U)
            assert det(V) == 1 == oracles.leibniz_det(V)


def test_crit08_propagation():
    with criterion(8, "twist chain pins M(K_2m-1) = -4, M(K_2m) = 0 for m <= 50 under 20 orders"):
        g = twist_chain_graph(50)
        base = propagate(g)
        for m in range(1, 51):
            assert base.pinned[f"K_{2 * m - 1}"] == -4
            assert base.pinned[f"K_{2 * m}"] == 0
        for seed in range(20):
            assert propagate(g, rng=random.Random(seed)).states == base.states


def test_crit09_obstructions(db):
    with criterion(9, "torsion-free fixtures, trefoil obstructed for |r| <= 4, genus-3 slope 7"):
        K = db["3_1"]
        assert torsion_free(K, Slope(-5, 1), T) is True
        assert torsion_free(K, Slope(-4, 1), T) is False
        assert torsion_free(K, Slope(-4, 1), N) is True
        for q in range(1, 9):
            for p in range(-4 * q, 4 * q + 1):
                if math.gcd(p, q) == 1:
                    assert su2_abelian_obstruction(K, Slope(p, q)).verdict is Verdict.OBSTRUCTED
        g3 = KnotRecord("g3", r2=8, M=8, r0=5, nu_sharp=5, genus=3, lspace_f2=True, torsion_averse=True)
        assert validate(g3) == []
        assert su2_abelian_obstruction(g3, Slope(7, 1)).verdict is Verdict.OBSTRUCTED


def test_crit10_structure(db):
    with criterion(10, "structural identities on complete records, parity over 10^4 slopes"):
        rnd = random.Random(10)
        slopes = []
        while len(slopes) < 10_000:
            q, p = rnd.randint(1, 16), rnd.randint(-400, 400)
            if math.gcd(p, q) == 1:
                slopes.append(Slope(p, q))
        complete = [K for K in db.fixture_knots() if None not in (K.r2, K.M, K.r0, K.nu_sharp)]
        assert len(complete) > 10
        for K in complete:
            assert validate(K) == []
            r2, M, r0, nu = K.r2, K.M, K.r0, K.nu_sharp
            assert r2 % 4 == 0 and M % 4 == 0 and (r2 + abs(M)) % 4 == 0
            assert r2 >= abs(M) and r2 >= r0 and r2 - r0 >= abs(M - nu)
            for s in slopes:
                for w in bundle_classes(s):
                    assert dim_f2(K, s, w).value % 2 == abs(s.p) % 2


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
