"""Report builders behind the service endpoints and the CLI.

Every builder returns a deterministic JSON-ready dict: identical inputs
give identical payloads (timestamps are added by the transport layer,
outside the report).  Each tolerance used in a pass/fail decision is
echoed into the report, and seeds are always explicit.
"""

from __future__ import annotations

import numpy as np

from . import lie_backend as lie
from .abelian_rh import (HyperellipticCurve, periods, rh_pullback_check,
                         serre_gram, serre_pairing)
from .errors import (ChainConstructionError, NonCocycleError, QuadratureError,
                     RankAmbiguousError, RefinementError)
from .goldman_form import (closedness_residual, fundamental_cycle,
                           goldman_matrix, pairing_operator)
from .rep_variety import (Representation, conjugate, is_irreducible,
                          random_flat_representation,
                          upper_triangular_flat_representation)
from .simplicial_oracle import (TwistedEvaluator, build_complex,
                                transport_cocycle)
from .twisted_cohomology import cohomology, transport_cochain

SCHEMA_VERSION = 1

NUMERIC_ERRORS = (RefinementError, RankAmbiguousError, QuadratureError,
                  NonCocycleError, ChainConstructionError)


def _spec(group: str, n: int) -> lie.LieGroupSpec:
    return lie.group_spec(group, n)


def _matrix_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(m)]


def _native(value):
    """Recursively convert numpy scalars/arrays to plain Python types."""
    if isinstance(value, dict):
        return {k: _native(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_native(v) for v in value]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return _native(value.tolist())
    return value


def _envelope(command: str, config: dict, results: dict,
              passed: bool, failures: list) -> dict:
    return _native({
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
        "passed": bool(passed),
        "failures": list(failures),
        "status": "ok",
    })


def run_command(command: str, builder, config: dict) -> dict:
    """Run a builder, folding numeric failures into the report envelope."""
    try:
        return builder()
    except NUMERIC_ERRORS as exc:
        return {
            "schema": SCHEMA_VERSION,
            "command": command,
            "config": config,
            "results": {"error": str(exc), "error_type": type(exc).__name__},
            "passed": False,
            "failures": [str(exc)],
            "status": "numeric_failure",
        }


# ---------------------------------------------------------------- gen

def gen_report(group: str = "SL", n: int = 2, genus: int = 2, seed: int = 1,
               scale: float = 0.5, flat_tol: float = 1e-10) -> dict:
    config = {"group": group, "n": n, "genus": genus, "seed": seed,
              "scale": scale, "flat_tol": flat_tol}

    def build():
        rep = random_flat_representation(_spec(group, n), genus, seed, scale,
                                         flat_tol)
        failures = []
        if rep.residual > flat_tol:
            failures.append(f"residual {rep.residual:.3e} > flat_tol")
        return _envelope("gen", config, {"representation": rep.to_json()},
                         not failures, failures)

    return run_command("gen", build, config)


# ---------------------------------------------------------------- cohom

def _expected_h1(spec: lie.LieGroupSpec, genus: int) -> int:
    return 2 * spec.dim_group * (genus - 1) + 2 * spec.dim_center


def cohom_report(group: str = "SL", n: int = 2, genus: int = 2, seed: int = 1,
                 scale: float = 0.5, flat_tol: float = 1e-10,
                 rank_tol: float = 1e-8) -> dict:
    config = {"group": group, "n": n, "genus": genus, "seed": seed,
              "scale": scale, "flat_tol": flat_tol, "rank_tol": rank_tol}

    def build():
        spec = _spec(group, n)
        rep = random_flat_representation(spec, genus, seed, scale, flat_tol)
        spaces = cohomology(rep, rank_tol, flat_tol)
        irreducible = is_irreducible(rep, rank_tol)
        euler = spaces.h0 - spaces.h1 + spaces.h2
        euler_expected = (2 - 2 * genus) * spec.dim_group
        failures = []
        if euler != euler_expected:
            failures.append(f"Euler characteristic {euler} != {euler_expected}")
        if spaces.h0 != spaces.h2:
            failures.append(f"duality h0={spaces.h0} != h2={spaces.h2}")
        expected = _expected_h1(spec, genus)
        if irreducible and spaces.h1 != expected:
            failures.append(f"h1={spaces.h1} != {expected} at irreducible point")
        results = {
            "h0": spaces.h0, "h1": spaces.h1, "h2": spaces.h2,
            "irreducible": irreducible,
            "expected_h1_irreducible": expected,
            "euler_characteristic": euler,
            "cohomology": spaces.to_json(),
        }
        return _envelope("cohom", config, results, not failures, failures)

    return run_command("cohom", build, config)


# ---------------------------------------------------------------- goldman

def goldman_report(group: str = "SL", n: int = 2, genus: int = 2, seed: int = 1,
                   scale: float = 0.5, flat_tol: float = 1e-10,
                   rank_tol: float = 1e-8, pairing_tol: float = 1e-8,
                   samples: int = 50) -> dict:
    config = {"group": group, "n": n, "genus": genus, "seed": seed,
              "scale": scale, "flat_tol": flat_tol, "rank_tol": rank_tol,
              "pairing_tol": pairing_tol, "samples": samples,
              "descent_tol": 1e-10, "nondegeneracy_tol": 1e-6}

    def build():
        spec = _spec(group, n)
        rep = random_flat_representation(spec, genus, seed, scale, flat_tol)
        spaces = cohomology(rep, rank_tol, flat_tol)
        gm = goldman_matrix(rep, spaces, rank_tol=rank_tol, seed=seed)

        rng = np.random.default_rng(seed)
        w = pairing_operator(rep, fundamental_cycle(genus))
        descent_max = 0.0
        antisym_max = 0.0
        for _ in range(samples):
            cu = spaces.representatives @ (
                rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
            cv = spaces.representatives @ (
                rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
            s = rng.standard_normal(spec.dim_group) + 1j * rng.standard_normal(spec.dim_group)
            base = cu @ w @ cv
            scale_uv = max(abs(base), np.linalg.norm(cu) * np.linalg.norm(cv), 1.0)
            descent_max = max(descent_max, abs(
                (cu + spaces.delta0 @ s) @ w @ cv - base) / scale_uv)
            antisym_max = max(antisym_max, abs(base + cv @ w @ cu) / scale_uv)

        failures = []
        if gm.antisymmetry_residual > pairing_tol:
            failures.append(f"antisymmetry {gm.antisymmetry_residual:.3e} > {pairing_tol:.1e}")
        if is_irreducible(rep, rank_tol) and gm.singular_value_ratio < 1e-6:
            failures.append(f"singular value ratio {gm.singular_value_ratio:.3e} < 1e-6")
        if descent_max > 1e-10:
            failures.append(f"descent residual {descent_max:.3e} > 1e-10")
        results = {
            "goldman_matrix": gm.to_json(),
            "antisymmetry_residual": gm.antisymmetry_residual,
            "singular_value_ratio": gm.singular_value_ratio,
            "descent_residual_max": float(descent_max),
            "pairwise_antisymmetry_max": float(antisym_max),
        }
        return _envelope("goldman", config, results, not failures, failures)

    return run_command("goldman", build, config)


# ---------------------------------------------------------------- oracle-check

def _oracle_disagreement(rep: Representation, spaces, cx, pairs: int,
                         seed: int) -> float:
    rng = np.random.default_rng(seed)
    w = pairing_operator(rep, fundamental_cycle(rep.genus))
    ev = TwistedEvaluator(cx, rep)
    worst = 0.0
    for _ in range(pairs):
        cu = spaces.representatives @ (
            rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
        cv = spaces.representatives @ (
            rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
        bar = cu @ w @ cv
        simp = ev.pairing(transport_cocycle(rep, cu, cx),
                          transport_cocycle(rep, cv, cx))
        worst = max(worst, abs(bar - simp) / max(abs(bar), abs(simp), 1.0))
    return float(worst)


def oracle_check_report(group: str = "SL", n: int = 2, genus: int = 2,
                        seed: int = 1, scale: float = 0.5,
                        flat_tol: float = 1e-10, rank_tol: float = 1e-8,
                        pairing_tol: float = 1e-8, pairs: int = 100,
                        refinement: int = 1) -> dict:
    config = {"group": group, "n": n, "genus": genus, "seed": seed,
              "scale": scale, "flat_tol": flat_tol, "rank_tol": rank_tol,
              "pairing_tol": pairing_tol, "pairs": pairs,
              "refinement": refinement}

    def build():
        spec = _spec(group, n)
        rep = random_flat_representation(spec, genus, seed, scale, flat_tol)
        spaces = cohomology(rep, rank_tol, flat_tol)
        cx0 = build_complex(genus, 0)
        worst0 = _oracle_disagreement(rep, spaces, cx0, pairs, seed)
        results = {"disagreement_refinement0": worst0}
        worst = worst0
        if refinement > 0:
            cxr = build_complex(genus, refinement)
            worstr = _oracle_disagreement(rep, spaces, cxr, pairs, seed)
            results[f"disagreement_refinement{refinement}"] = worstr
            stability = _refinement_stability(rep, spaces, cx0, cxr, seed)
            results["refinement_stability"] = stability
            worst = max(worst0, worstr, stability)
        failures = []
        if worst > pairing_tol:
            failures.append(f"oracle disagreement {worst:.3e} > {pairing_tol:.1e}")
        return _envelope("oracle-check", config, results, not failures, failures)

    return run_command("oracle-check", build, config)


def _refinement_stability(rep, spaces, cx0, cx1, seed, pairs: int = 20) -> float:
    rng = np.random.default_rng(seed + 1)
    ev0 = TwistedEvaluator(cx0, rep)
    ev1 = TwistedEvaluator(cx1, rep)
    worst = 0.0
    for _ in range(pairs):
        cu = spaces.representatives @ (
            rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
        cv = spaces.representatives @ (
            rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
        p0 = ev0.pairing(transport_cocycle(rep, cu, cx0),
                         transport_cocycle(rep, cv, cx0))
        p1 = ev1.pairing(transport_cocycle(rep, cu, cx1),
                         transport_cocycle(rep, cv, cx1))
        worst = max(worst, abs(p0 - p1) / max(abs(p0), abs(p1), 1.0))
    return float(worst)


# ---------------------------------------------------------------- closedness

def closedness_report(group: str = "SL", n: int = 2, genus: int = 2,
                      seed: int = 1, scale: float = 0.5,
                      flat_tol: float = 1e-10, rank_tol: float = 1e-8,
                      step: float = 1e-3, closedness_tol: float = 1e-4) -> dict:
    config = {"group": group, "n": n, "genus": genus, "seed": seed,
              "scale": scale, "flat_tol": flat_tol, "rank_tol": rank_tol,
              "step": step, "closedness_tol": closedness_tol}

    def build():
        spec = _spec(group, n)
        rep = random_flat_representation(spec, genus, seed, scale, flat_tol)
        spaces = cohomology(rep, rank_tol, flat_tol)
        dirs = [spaces.representatives[:, i] for i in range(3)]
        res_2h = closedness_residual(rep, dirs, 2 * step, flat_tol, rank_tol)
        res_h = closedness_residual(rep, dirs, step, flat_tol, rank_tol)
        # quadratic decay is unobservable once both estimates sit at the
        # noise floor (the abelian chart returns exact zeros)
        decay_ok = res_2h >= 2.0 * res_h or max(res_2h, res_h) <= 1e-12
        failures = []
        if res_h > closedness_tol:
            failures.append(f"closedness residual {res_h:.3e} > {closedness_tol:.1e}")
        if not decay_ok:
            failures.append(
                f"no O(h^2) decay: residual({2 * step:g})={res_2h:.3e}, "
                f"residual({step:g})={res_h:.3e}")
        results = {
            "residual_2h": float(res_2h),
            "residual_h": float(res_h),
            "decay_ratio": float(res_2h / res_h) if res_h > 0 else None,
            "steps": [2 * step, step],
        }
        return _envelope("closedness", config, results, not failures, failures)

    return run_command("closedness", build, config)


# ---------------------------------------------------------------- abelian

def abelian_report(branch_points=(-5.0, -3.0, -1.0, 1.0, 3.0, 5.0),
                   quadrature_order: int = 128, seed: int = 1,
                   pairs: int = 100, pullback_tol: float = 1e-6,
                   relation1_tol: float = 1e-6,
                   drift_tol: float = 1e-8) -> dict:
    config = {"branch_points": [float(b) for b in branch_points],
              "quadrature_order": quadrature_order, "seed": seed,
              "pairs": pairs, "pullback_tol": pullback_tol,
              "relation1_tol": relation1_tol, "drift_tol": drift_tol}

    def build():
        curve = HyperellipticCurve(tuple(branch_points))
        data = periods(curve, quadrature_order)
        g = curve.genus
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(pairs):
            v = (rng.standard_normal(g) + 1j * rng.standard_normal(g),
                 rng.standard_normal(g) + 1j * rng.standard_normal(g))
            w = (rng.standard_normal(g) + 1j * rng.standard_normal(g),
                 rng.standard_normal(g) + 1j * rng.standard_normal(g))
            _, _, rel = rh_pullback_check(curve, data, v, w)
            worst = max(worst, rel)
        eta_v = rng.standard_normal(g)
        eta_w = rng.standard_normal(g)
        pure = serre_pairing(data, (eta_v, np.zeros(g)), (eta_w, np.zeros(g)))
        gram = serre_gram(data)
        sv = np.linalg.svd(gram, compute_uv=False)
        eigs = np.array(data.relation2_eigenvalues)
        definite = bool(np.all(eigs > 0) or np.all(eigs < 0))

        failures = []
        if data.relation1_residual > relation1_tol:
            failures.append(
                f"relation I residual {data.relation1_residual:.3e} > {relation1_tol:.1e}")
        if not definite:
            failures.append("relation II not definite")
        if data.drift > drift_tol:
            failures.append(f"quadrature drift {data.drift:.3e} > {drift_tol:.1e}")
        if worst > pullback_tol:
            failures.append(f"pullback error {worst:.3e} > {pullback_tol:.1e}")
        if pure != 0:
            failures.append(f"pure-type pairing {abs(pure):.3e} != 0")
        if sv[-1] < 1e-10:
            failures.append("theta gram rank-deficient")

        results = {
            "periods": data.to_json(),
            "relation1_residual": data.relation1_residual,
            "relation2_eigenvalues": list(data.relation2_eigenvalues),
            "relation2_definite": definite,
            "quadrature_drift": data.drift,
            "theta_gram": _matrix_json(gram),
            "theta_gram_singular_values": [float(s) for s in sv],
            "pullback_worst_relative_error": float(worst),
            "pure_type_pairing": [pure.real, pure.imag],
        }
        return _envelope("abelian", config, results, not failures, failures)

    return run_command("abelian", build, config)


# ---------------------------------------------------------------- report (acceptance table)

def _crit(name: str, passed: bool, details: dict) -> dict:
    return {"criterion": name, "passed": bool(passed), "details": details}


def acceptance_report(flat_tol: float = 1e-10, rank_tol: float = 1e-8,
                      pairing_tol: float = 1e-8,
                      quadrature_order: int = 128) -> dict:
    """Aggregate table of all acceptance criteria at their stated tolerances."""
    config = {"flat_tol": flat_tol, "rank_tol": rank_tol,
              "pairing_tol": pairing_tol, "quadrature_order": quadrature_order,
              "seeds": list(range(1, 6))}

    def build():
        criteria = []

        # 1. dimension formula at >= 5 random irreducible points per case
        dims = []
        ok = True
        for group, n, genus, expect in (("SL", 2, 2, 6), ("SL", 2, 3, 12),
                                        ("TORUS", 1, 2, 4)):
            spec = _spec(group, n)
            for seed in range(1, 6):
                rep = random_flat_representation(spec, genus, seed, 0.5, flat_tol)
                sp = cohomology(rep, rank_tol, flat_tol)
                good = sp.h1 == expect and is_irreducible(rep, rank_tol)
                ok = ok and good
                dims.append({"group": group, "genus": genus, "seed": seed,
                             "h1": sp.h1, "expected": expect, "ok": good})
        criteria.append(_crit("dimension_formula", ok, {"cases": dims}))

        # 2. Goldman form properties at >= 5 irreducible SL2 g2 points
        worst_anti, worst_ratio = 0.0, 1.0
        for seed in range(1, 6):
            rep = random_flat_representation(_spec("SL", 2), 2, seed, 0.5, flat_tol)
            sp = cohomology(rep, rank_tol, flat_tol)
            gm = goldman_matrix(rep, sp, rank_tol=rank_tol)
            worst_anti = max(worst_anti, gm.antisymmetry_residual)
            worst_ratio = min(worst_ratio, gm.singular_value_ratio)
        criteria.append(_crit(
            "goldman_form_properties",
            worst_anti <= pairing_tol and worst_ratio >= 1e-6,
            {"antisymmetry_max": worst_anti, "sv_ratio_min": worst_ratio,
             "antisymmetry_tol": pairing_tol, "sv_ratio_tol": 1e-6}))

        # 3. oracle equivalence for SL2 and torus, plus refinement stability
        details3 = {}
        ok3 = True
        for group, n in (("SL", 2), ("TORUS", 1)):
            rep = random_flat_representation(_spec(group, n), 2, 1, 0.5, flat_tol)
            sp = cohomology(rep, rank_tol, flat_tol)
            cx0 = build_complex(2, 0)
            cx1 = build_complex(2, 1)
            worst = max(_oracle_disagreement(rep, sp, cx0, 100, 1),
                        _oracle_disagreement(rep, sp, cx1, 100, 1))
            stab = _refinement_stability(rep, sp, cx0, cx1, 1)
            details3[group] = {"disagreement_max": worst,
                               "refinement_stability": stab}
            ok3 = ok3 and worst <= pairing_tol and stab <= pairing_tol
        details3["tol"] = pairing_tol
        criteria.append(_crit("oracle_equivalence", ok3, details3))

        # 4. descent and conjugation invariance, >= 50 instances each
        rep = random_flat_representation(_spec("SL", 2), 2, 1, 0.5, flat_tol)
        sp = cohomology(rep, rank_tol, flat_tol)
        w = pairing_operator(rep, fundamental_cycle(2))
        rng = np.random.default_rng(4)
        descent_max, conj_max = 0.0, 0.0
        for k in range(50):
            cu = sp.representatives @ (rng.standard_normal(6) + 1j * rng.standard_normal(6))
            cv = sp.representatives @ (rng.standard_normal(6) + 1j * rng.standard_normal(6))
            s = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            base = cu @ w @ cv
            scale_uv = max(abs(base), np.linalg.norm(cu) * np.linalg.norm(cv), 1.0)
            descent_max = max(descent_max,
                              abs((cu + sp.delta0 @ s) @ w @ cv - base) / scale_uv)
            gmat = np.eye(2, dtype=complex) + 0.3 * (
                rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            gmat = gmat / np.linalg.det(gmat) ** 0.5
            crep = conjugate(rep, gmat)
            wc = pairing_operator(crep, fundamental_cycle(2))
            tu = transport_cochain(rep.spec, gmat, cu.reshape(4, 3)).reshape(-1)
            tv = transport_cochain(rep.spec, gmat, cv.reshape(4, 3)).reshape(-1)
            conj_max = max(conj_max, abs(tu @ wc @ tv - base) / scale_uv)
        criteria.append(_crit(
            "descent_and_conjugation", descent_max <= 1e-10 and conj_max <= 1e-8,
            {"descent_max": descent_max, "descent_tol": 1e-10,
             "conjugation_max": conj_max, "conjugation_tol": 1e-8,
             "instances": 50}))

        # 5. abelian intersection form
        trep = random_flat_representation(_spec("TORUS", 1), 2, 1, 0.5, flat_tol)
        tsp = cohomology(trep, rank_tol, flat_tol)
        tgm = goldman_matrix(trep, tsp, rank_tol=rank_tol)
        j_std = np.zeros((4, 4))
        for i in range(2):
            j_std[2 * i, 2 * i + 1] = 1.0
            j_std[2 * i + 1, 2 * i] = -1.0
        exact = bool(np.array_equal(tgm.matrix, j_std.astype(complex)))
        criteria.append(_crit("abelian_intersection_form", exact,
                              {"matrix": _matrix_json(tgm.matrix),
                               "exact_match": exact}))

        # 6. Riemann bilinear relations
        curve = HyperellipticCurve((-5.0, -3.0, -1.0, 1.0, 3.0, 5.0))
        data = periods(curve, quadrature_order)
        eigs = np.array(data.relation2_eigenvalues)
        definite = bool(np.all(eigs > 0) or np.all(eigs < 0))
        criteria.append(_crit(
            "riemann_bilinear_relations",
            data.relation1_residual <= 1e-6 and definite and data.drift <= 1e-8,
            {"relation1_residual": data.relation1_residual,
             "relation1_tol": 1e-6,
             "relation2_eigenvalues": list(data.relation2_eigenvalues),
             "drift": data.drift, "drift_tol": 1e-8}))

        # 7. pullback identity over 100 random tangent pairs
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(100):
            v = (rng.standard_normal(2) + 1j * rng.standard_normal(2),
                 rng.standard_normal(2) + 1j * rng.standard_normal(2))
            wv = (rng.standard_normal(2) + 1j * rng.standard_normal(2),
                  rng.standard_normal(2) + 1j * rng.standard_normal(2))
            _, _, rel = rh_pullback_check(curve, data, v, wv)
            worst = max(worst, rel)
        pure = serre_pairing(data, (np.ones(2), np.zeros(2)),
                             (np.arange(1.0, 3.0), np.zeros(2)))
        criteria.append(_crit(
            "riemann_hilbert_pullback", worst <= 1e-6 and pure == 0,
            {"worst_relative_error": worst, "tol": 1e-6, "pairs": 100,
             "pure_type_exact_zero": pure == 0}))

        # 8. closedness with O(h^2) decay
        rep8 = random_flat_representation(_spec("SL", 2), 2, 1, 0.5, flat_tol)
        sp8 = cohomology(rep8, rank_tol, flat_tol)
        dirs = [sp8.representatives[:, i] for i in range(3)]
        r2 = closedness_residual(rep8, dirs, 2e-3, flat_tol, rank_tol)
        r1 = closedness_residual(rep8, dirs, 1e-3, flat_tol, rank_tol)
        decay_ok = r2 >= 2.0 * r1 or max(r1, r2) <= 1e-12
        criteria.append(_crit(
            "closedness", r1 <= 1e-4 and decay_ok,
            {"residual_2e-3": float(r2), "residual_1e-3": float(r1),
             "tol": 1e-4, "decay_ratio": float(r2 / r1) if r1 > 0 else None}))

        # 9. reducibility detection, 20/20 each way
        red_ok = sum(
            1 for s in range(20)
            if not is_irreducible(upper_triangular_flat_representation(2, s),
                                  rank_tol))
        irr_ok = sum(
            1 for s in range(1, 21)
            if is_irreducible(
                random_flat_representation(_spec("SL", 2), 2, s, 0.5, flat_tol),
                rank_tol))
        criteria.append(_crit(
            "reducibility_detection", red_ok == 20 and irr_ok == 20,
            {"reducible_flagged": red_ok, "irreducible_flagged": irr_ok,
             "expected": 20}))

        failures = [c["criterion"] for c in criteria if not c["passed"]]
        return _envelope("report", config, {"criteria": criteria},
                         not failures, failures)

    return run_command("report", build, config)
