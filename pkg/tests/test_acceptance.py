"""Acceptance suite: every criterion at its stated tolerance, one
pass/fail line each (run with -s to see them)."""

import time

import numpy as np
import pytest

from charlab import lie_backend as lie
from charlab.abelian_rh import (HyperellipticCurve, periods,
                                rh_pullback_check, serre_pairing)
from charlab.goldman_form import (closedness_residual, fundamental_cycle,
                                  goldman_matrix, pairing_operator)
from charlab.rep_variety import (conjugate, is_irreducible,
                                 random_flat_representation,
                                 upper_triangular_flat_representation)
from charlab.simplicial_oracle import (TwistedEvaluator, build_complex,
                                       transport_cocycle)
from charlab.twisted_cohomology import cohomology, transport_cochain

SL2 = lie.group_spec(lie.SL, 2)
TORUS = lie.group_spec(lie.TORUS)
SEEDS = range(1, 6)


def report(name: str, ok: bool, elapsed: float, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}  {name}  [{elapsed:.2f}s]  {detail}")
    assert ok, f"{name}: {detail}"


def random_classes(spaces, rng, count):
    for _ in range(count):
        yield spaces.representatives @ (
            rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))


def test_criterion_1_dimension_formula():
    t0 = time.time()
    results = []
    for spec, genus, expect in ((SL2, 2, 6), (SL2, 3, 12), (TORUS, 2, 4)):
        for seed in SEEDS:
            rep = random_flat_representation(spec, genus, seed=seed, scale=0.5)
            spaces = cohomology(rep, rank_tol=1e-8)
            results.append(spaces.h1 == expect and is_irreducible(rep))
    elapsed = time.time() - t0
    ok = all(results) and elapsed < 10.0
    report("criterion-1 dimension formula (SL2 g2: 6, SL2 g3: 12, C* g2: 4)",
           ok, elapsed, f"{sum(results)}/{len(results)} points matched")


def test_criterion_2_goldman_form_properties():
    t0 = time.time()
    worst_anti, worst_ratio = 0.0, 1.0
    for seed in SEEDS:
        rep = random_flat_representation(SL2, 2, seed=seed, scale=0.5)
        spaces = cohomology(rep)
        gm = goldman_matrix(rep, spaces)
        worst_anti = max(worst_anti, gm.antisymmetry_residual)
        worst_ratio = min(worst_ratio, gm.singular_value_ratio)
    elapsed = time.time() - t0
    ok = worst_anti <= 1e-8 and worst_ratio >= 1e-6 and elapsed < 30.0
    report("criterion-2 Goldman antisymmetry and nondegeneracy", ok, elapsed,
           f"antisym {worst_anti:.2e} (tol 1e-8), sv ratio {worst_ratio:.2e} (tol 1e-6)")


def test_criterion_3_oracle_equivalence():
    t0 = time.time()
    worst = 0.0
    stability = 0.0
    cx0 = build_complex(2, 0)
    cx1 = build_complex(2, 1)
    for spec in (SL2, TORUS):
        rep = random_flat_representation(spec, 2, seed=1, scale=0.5)
        spaces = cohomology(rep)
        w = pairing_operator(rep, fundamental_cycle(2))
        rng = np.random.default_rng(3)
        ev0 = TwistedEvaluator(cx0, rep)
        ev1 = TwistedEvaluator(cx1, rep)
        for k in range(100):
            u = next(random_classes(spaces, rng, 1))
            v = next(random_classes(spaces, rng, 1))
            bar = u @ w @ v
            f0 = transport_cocycle(rep, u, cx0)
            h0 = transport_cocycle(rep, v, cx0)
            p0 = ev0.pairing(f0, h0)
            worst = max(worst, abs(bar - p0) / max(abs(bar), abs(p0), 1.0))
            if k < 20:
                p1 = ev1.pairing(transport_cocycle(rep, u, cx1),
                                 transport_cocycle(rep, v, cx1))
                stability = max(stability,
                                abs(p0 - p1) / max(abs(p0), abs(p1), 1.0))
    elapsed = time.time() - t0
    ok = worst <= 1e-8 and stability <= 1e-8 and elapsed < 60.0
    report("criterion-3 bar vs simplicial oracle (100 pairs, SL2 and C*)",
           ok, elapsed,
           f"disagreement {worst:.2e}, refinement stability {stability:.2e} (tol 1e-8)")


def test_criterion_4_descent_and_conjugation():
    t0 = time.time()
    rep = random_flat_representation(SL2, 2, seed=1, scale=0.5)
    spaces = cohomology(rep)
    w = pairing_operator(rep, fundamental_cycle(2))
    rng = np.random.default_rng(4)
    descent_max, conj_max = 0.0, 0.0
    for _ in range(50):
        u = next(random_classes(spaces, rng, 1))
        v = next(random_classes(spaces, rng, 1))
        s = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        base = u @ w @ v
        scale = max(abs(base), np.linalg.norm(u) * np.linalg.norm(v), 1.0)
        descent_max = max(
            descent_max, abs((u + spaces.delta0 @ s) @ w @ v - base) / scale)
        g = np.eye(2) + 0.3 * (rng.standard_normal((2, 2))
                               + 1j * rng.standard_normal((2, 2)))
        g = g / np.linalg.det(g) ** 0.5
        wc = pairing_operator(conjugate(rep, g), fundamental_cycle(2))
        tu = transport_cochain(SL2, g, u.reshape(4, 3)).reshape(-1)
        tv = transport_cochain(SL2, g, v.reshape(4, 3)).reshape(-1)
        conj_max = max(conj_max, abs(tu @ wc @ tv - base) / scale)
    elapsed = time.time() - t0
    ok = descent_max <= 1e-10 and conj_max <= 1e-8 and elapsed < 30.0
    report("criterion-4 descent and conjugation invariance (50 instances)",
           ok, elapsed,
           f"descent {descent_max:.2e} (tol 1e-10), conjugation {conj_max:.2e} (tol 1e-8)")


def test_criterion_5_abelian_intersection_form():
    t0 = time.time()
    rep = random_flat_representation(TORUS, 2, seed=1, scale=0.5)
    spaces = cohomology(rep)
    gm = goldman_matrix(rep, spaces)
    j_std = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        j_std[2 * i, 2 * i + 1] = 1.0
        j_std[2 * i + 1, 2 * i] = -1.0
    exact = np.array_equal(gm.matrix, j_std)
    elapsed = time.time() - t0
    ok = exact and elapsed < 5.0
    report("criterion-5 C* Goldman matrix equals the standard symplectic matrix",
           ok, elapsed, f"exact match: {exact}")


def test_criterion_6_riemann_bilinear_relations():
    t0 = time.time()
    curve = HyperellipticCurve((-5.0, -3.0, -1.0, 1.0, 3.0, 5.0))
    data = periods(curve, 128)
    eigs = np.array(data.relation2_eigenvalues)
    definite = bool(np.all(eigs > 0) or np.all(eigs < 0))
    elapsed = time.time() - t0
    ok = (data.relation1_residual <= 1e-6 and definite
          and data.drift <= 1e-8 and elapsed < 30.0)
    report("criterion-6 Riemann bilinear relations on (-5,-3,-1,1,3,5)",
           ok, elapsed,
           f"relation-I {data.relation1_residual:.2e} (tol 1e-6), "
           f"relation-II definite: {definite}, drift {data.drift:.2e} (tol 1e-8)")


def test_criterion_7_pullback_identity():
    t0 = time.time()
    curve = HyperellipticCurve((-5.0, -3.0, -1.0, 1.0, 3.0, 5.0))
    data = periods(curve, 128)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        v = (rng.standard_normal(2) + 1j * rng.standard_normal(2),
             rng.standard_normal(2) + 1j * rng.standard_normal(2))
        w = (rng.standard_normal(2) + 1j * rng.standard_normal(2),
             rng.standard_normal(2) + 1j * rng.standard_normal(2))
        _, _, rel = rh_pullback_check(curve, data, v, w)
        worst = max(worst, rel)
    pure = serre_pairing(data, (np.ones(2), np.zeros(2)),
                         (np.array([2.0, -1.0]), np.zeros(2)))
    lhs, rhs, _ = rh_pullback_check(curve, data,
                                    (np.ones(2), np.zeros(2)),
                                    (np.array([2.0, -1.0]), np.zeros(2)))
    elapsed = time.time() - t0
    ok = (worst <= 1e-6 and pure == 0 and lhs == 0 and abs(rhs) < 1e-10
          and elapsed < 30.0)
    report("criterion-7 pullback of the symplectic pairing (100 pairs)",
           ok, elapsed,
           f"worst relative error {worst:.2e} (tol 1e-6), pure-type exact zero: {pure == 0}")


def test_criterion_8_closedness():
    t0 = time.time()
    rep = random_flat_representation(SL2, 2, seed=1, scale=0.5)
    spaces = cohomology(rep)
    dirs = [spaces.representatives[:, i] for i in range(3)]
    r2 = closedness_residual(rep, dirs, 2e-3)
    r1 = closedness_residual(rep, dirs, 1e-3)
    ratio = r2 / r1 if r1 > 0 else float("inf")
    elapsed = time.time() - t0
    ok = r1 <= 1e-4 and ratio >= 2.0 and elapsed < 300.0
    report("criterion-8 closedness by finite differences", ok, elapsed,
           f"residual(1e-3) {r1:.2e} (tol 1e-4), decay ratio {ratio:.2f} (O(h^2) ~ 4)")


def test_criterion_9_reducibility_detection():
    t0 = time.time()
    reducible_hits = sum(
        1 for s in range(20)
        if not is_irreducible(upper_triangular_flat_representation(2, seed=s)))
    irreducible_hits = sum(
        1 for s in range(1, 21)
        if is_irreducible(random_flat_representation(SL2, 2, seed=s, scale=0.5)))
    elapsed = time.time() - t0
    ok = reducible_hits == 20 and irreducible_hits == 20 and elapsed < 10.0
    report("criterion-9 reducibility detection (20/20 both ways)", ok, elapsed,
           f"reducible {reducible_hits}/20, irreducible {irreducible_hits}/20")
