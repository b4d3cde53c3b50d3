"""The Goldman symplectic pairing on H^1(pi_1, g_Ad rho).

The pairing is the cup product of two twisted 1-cocycles, contracted with
the invariant form and evaluated against a fundamental 2-cycle of the
presentation complex written in the bar complex.  The 2-cycle is a list of
(prefix word, single-letter word, integer coefficient) entries; the exact
entry list is derived from the relator and certified at construction time
by a descent self-test, which pins it uniquely up to sign.  The global
sign is normalized so that the abelian pairing gives
omega(e_{a1}, e_{b1}) = +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from . import lie_backend as lie
from .errors import ChainConstructionError, NonCocycleError
from .lie_backend import InvariantForm, ad_matrix
from .rep_variety import (FLAT_TOL, RANK_TOL, Representation, perturb,
                          random_flat_representation, refine)
from .surface_group import SurfaceGroupPresentation, Word, relator
from .twisted_cohomology import (CohomologySpaces, cochain_flat, cocycle_matrix,
                                 cohomology)

PAIRING_TOL = 1e-8


@dataclass(frozen=True)
class BarTwoChain:
    """Fundamental 2-cycle over which cup products are evaluated."""

    genus: int
    entries: tuple  # of (prefix: Word, letter: Word, coefficient: int)

    def __len__(self):
        return len(self.entries)


def _chain_entries(genus: int):
    """Relator prefix pairs plus one correction entry per generator.

    For R = l_1 ... l_m the prefix part is sum_k [w_k | l_{k+1}]; its bar
    boundary is sum_k [l_k] - [R], and subtracting [x_j | x_j^{-1}] for
    every generator cancels the letter terms, leaving only degenerate
    boundary terms and [R], both of which vanish against cocycles at flat
    representations.
    """
    word = relator(genus)
    entries = []
    prefix = word[:1]
    for k in range(1, len(word)):
        entries.append((prefix, (word[k],), 1))
        prefix = prefix + (word[k],)
    for j in range(2 * genus):
        entries.append((((j, 1),), ((j, -1),), -1))
    return tuple(entries)


def _prefix_operator(rep: Representation, word: Word) -> np.ndarray:
    """Linear map sending flat cochain coordinates to u(word) coordinates."""
    spec = rep.spec
    d = spec.dim_group
    op = np.zeros((d, 2 * rep.genus * d), dtype=complex)
    prefix = np.eye(spec.n, dtype=complex)
    for i, e in word:
        if e == 1:
            op[:, i * d:(i + 1) * d] += ad_matrix(spec, prefix)
            prefix = prefix @ rep.matrices[i]
        else:
            prefix = prefix @ rep.inverses[i]
            op[:, i * d:(i + 1) * d] -= ad_matrix(spec, prefix)
    return op


def pairing_operator(rep: Representation, cycle: BarTwoChain,
                     form: InvariantForm | None = None) -> np.ndarray:
    """Matrix W with omega(u, v) = u^T W v on flat cochain coordinates.

    Assembles sum over chain entries of
    coeff * B(u(prefix), Ad(rho(prefix)) v(letter)).
    """
    if form is None:
        form = InvariantForm(rep.spec)
    spec = rep.spec
    d = spec.dim_group
    gram = form.gram
    size = 2 * rep.genus * d
    w = np.zeros((size, size), dtype=complex)
    for prefix, letter, coeff in cycle.entries:
        left = _prefix_operator(rep, prefix)           # u -> u(prefix)
        right = _prefix_operator(rep, letter)          # v -> v(letter)
        ad_pre = ad_matrix(spec, _word_matrix(rep, prefix))
        w += coeff * (left.T @ gram @ ad_pre @ right)
    return w


def _word_matrix(rep: Representation, word: Word) -> np.ndarray:
    out = np.eye(rep.spec.n, dtype=complex)
    for i, e in word:
        out = out @ (rep.matrices[i] if e == 1 else rep.inverses[i])
    return out


@lru_cache(maxsize=None)
def _validated_chain(genus: int) -> BarTwoChain:
    chain = BarTwoChain(genus, _chain_entries(genus))
    _descent_self_test(chain)
    return chain


def fundamental_cycle(pres: SurfaceGroupPresentation | int,
                      validate: bool = True) -> BarTwoChain:
    """Fundamental 2-cycle for the given presentation (or genus).

    With validate=True (the default) the chain is checked once per genus:
    descent omega(u + delta0 s, v) = omega(u, v) must hold to 1e-10 on
    five seeded flat SL(2) representations.
    """
    genus = pres if isinstance(pres, int) else pres.genus
    if genus < 2:
        raise ValueError("genus must be >= 2")
    if validate:
        return _validated_chain(genus)
    return BarTwoChain(genus, _chain_entries(genus))


def _descent_self_test(chain: BarTwoChain, tol: float = 1e-10) -> None:
    spec = lie.group_spec(lie.SL, 2)
    rng = np.random.default_rng(20240 + chain.genus)
    for seed in range(1, 6):
        rep = random_flat_representation(spec, chain.genus, seed=seed, scale=0.5)
        spaces = cohomology(rep)
        w = pairing_operator(rep, chain)
        d0 = spaces.delta0
        for _ in range(3):
            u = spaces.representatives @ (
                rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
            v = spaces.representatives @ (
                rng.standard_normal(spaces.h1) + 1j * rng.standard_normal(spaces.h1))
            s = rng.standard_normal(spec.dim_group) + 1j * rng.standard_normal(spec.dim_group)
            base = u @ w @ v
            shifted = (u + d0 @ s) @ w @ v
            scale = max(abs(base), np.linalg.norm(u) * np.linalg.norm(v), 1.0)
            if abs(shifted - base) / scale > tol:
                raise ChainConstructionError(
                    f"descent residual {abs(shifted - base) / scale:.3e} at seed {seed}")


def goldman_pairing(rep: Representation, u: np.ndarray, v: np.ndarray,
                    cycle: BarTwoChain | None = None,
                    form: InvariantForm | None = None,
                    cocycle_tol: float = PAIRING_TOL) -> complex:
    """Goldman pairing of two cocycles.

    Inputs must lie in ker(delta1) to ``cocycle_tol``; anything else is
    rejected with the residual reported.
    """
    if cycle is None:
        cycle = fundamental_cycle(rep.genus)
    u = cochain_flat(u)
    v = cochain_flat(v)
    d1 = cocycle_matrix(rep)
    for vec in (u, v):
        res = float(np.linalg.norm(d1 @ vec) / max(np.linalg.norm(vec), 1.0))
        if res > cocycle_tol:
            raise NonCocycleError(res, cocycle_tol)
    w = pairing_operator(rep, cycle, form)
    return complex(u @ w @ v)


@dataclass(frozen=True)
class GoldmanMatrix:
    """The pairing in an H^1 representative basis, with provenance."""

    matrix: np.ndarray
    spaces: CohomologySpaces
    rank_tol: float
    seed: int | None = None

    @property
    def antisymmetry_residual(self) -> float:
        m = self.matrix
        return float(np.linalg.norm(m + m.T) / max(np.linalg.norm(m), 1e-300))

    @property
    def singular_value_ratio(self) -> float:
        sv = np.linalg.svd(self.matrix, compute_uv=False)
        if sv[0] == 0:
            return 0.0
        return float(sv[-1] / sv[0])

    def to_json(self) -> dict:
        return {
            "size": int(self.matrix.shape[0]),
            "matrix": [[[float(z.real), float(z.imag)] for z in row]
                       for row in self.matrix],
            "antisymmetry_residual": self.antisymmetry_residual,
            "singular_value_ratio": self.singular_value_ratio,
            "basis": {
                "rep_hash": self.spaces.rep.content_hash(),
                "seed": self.seed,
                "rank_tol": self.rank_tol,
            },
        }


def goldman_matrix(rep: Representation, spaces: CohomologySpaces,
                   cycle: BarTwoChain | None = None,
                   form: InvariantForm | None = None,
                   rank_tol: float = RANK_TOL,
                   seed: int | None = None) -> GoldmanMatrix:
    """Pairing matrix Omega[i][j] on the H^1 representatives."""
    if cycle is None:
        cycle = fundamental_cycle(rep.genus)
    w = pairing_operator(rep, cycle, form)
    basis = spaces.representatives
    omega = basis.T @ w @ basis
    return GoldmanMatrix(omega, spaces, rank_tol, seed)


def _tangent_cochain(rep_a: Representation, rep_b: Representation,
                     step: float) -> np.ndarray:
    """Central-difference tangent (log(rho_a rho_b^{-1}) per generator)/step."""
    spec = rep_a.spec
    blocks = []
    for ma, mb in zip(rep_a.matrices, rep_b.matrices):
        diff = ma @ np.linalg.inv(mb)
        if spec.n == 1:
            xi = np.log(diff)
        else:
            xi = scipy.linalg.logm(diff)
        blocks.append(lie.algebra_coords(spec, xi / step))
    return np.stack(blocks, axis=0)


def closedness_residual(rep: Representation, directions, h: float,
                        flat_tol: float = FLAT_TOL,
                        rank_tol: float = RANK_TOL,
                        form: InvariantForm | None = None) -> float:
    """Finite-difference estimate of |d omega(X, Y, Z)| at an irreducible point.

    The chart is t -> refine(exp(sum t_i X_i) rho); its coordinate vector
    fields commute, so d omega reduces to the cyclic sum of directional
    derivatives of omega, estimated by central differences.  Stencil
    tangents are extracted by matrix logarithms of chart differences and
    projected back onto ker(delta1); coboundary components are harmless by
    descent.  The torus chart needs no refinement, so its coordinate
    fields are exactly the constant cochains and the estimator returns an
    exact zero for the (constant-coefficient) abelian form.
    """
    if len(directions) != 3:
        raise ValueError("need exactly 3 tangent directions")
    dirs = [np.asarray(x, dtype=complex).reshape(2 * rep.genus, rep.spec.dim_group)
            for x in directions]
    cycle = fundamental_cycle(rep.genus)
    abelian = rep.spec.kind == lie.TORUS

    point_cache: dict = {}

    def chart(offsets: tuple) -> Representation:
        if offsets in point_cache:
            return point_cache[offsets]
        total = sum(m * h * d for m, d in zip(offsets, dirs))
        moved = perturb(rep, total)
        if not abelian:
            mats, _, _ = refine(rep.spec, rep.genus, moved.matrices,
                                flat_tol=flat_tol)
            moved = Representation(rep.spec, rep.genus, mats)
        point_cache[offsets] = moved
        return moved

    def offsets_plus(base: tuple, i: int, delta: int) -> tuple:
        out = list(base)
        out[i] += delta
        return tuple(out)

    tangent_cache: dict = {}

    def tangent(base: tuple, i: int) -> np.ndarray:
        key = (base, i)
        if key in tangent_cache:
            return tangent_cache[key]
        if abelian:
            vec = cochain_flat(dirs[i])
        else:
            fwd = chart(offsets_plus(base, i, 1))
            bwd = chart(offsets_plus(base, i, -1))
            vec = cochain_flat(_tangent_cochain(fwd, bwd, 2 * h))
            # project onto ker(delta1) at the stencil point
            here = chart(base)
            d1 = cocycle_matrix(here)
            _, sv, vh = np.linalg.svd(d1)
            scale = max(sv[0], 1.0)
            rank = int(np.sum(sv / scale >= rank_tol))
            null = vh[rank:].conj().T
            vec = null @ (null.conj().T @ vec)
        tangent_cache[key] = vec
        return vec

    pairing_cache: dict = {}

    def omega_at(base: tuple, i: int, j: int) -> complex:
        key = (base, i, j)
        if key in pairing_cache:
            return pairing_cache[key]
        here = chart(base)
        w = pairing_operator(here, cycle, form)
        vi = tangent(base, i)
        vj = tangent(base, j)
        val = 0.5 * ((vi @ w @ vj) - (vj @ w @ vi))
        pairing_cache[key] = val
        pairing_cache[(base, j, i)] = -val
        return val

    origin = (0, 0, 0)
    total = 0.0 + 0.0j
    for (x, y, z) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        plus = omega_at(offsets_plus(origin, x, 1), y, z)
        minus = omega_at(offsets_plus(origin, x, -1), y, z)
        total += (plus - minus) / (2 * h)
    return abs(total)
