"""Points of Hom(pi_1, G): residuals, Gauss-Newton refinement onto the
relation variety, conjugation, and the Burnside irreducibility test.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import lie_backend as lie
from .errors import RankAmbiguousError, RefinementError
from .lie_backend import LieGroupSpec
from .surface_group import evaluate_word, relator

FLAT_TOL = 1e-10
RANK_TOL = 1e-8
#: indeterminate band around a rank tolerance, as multiplicative half-width
BAND_FACTOR = 100.0


@dataclass(frozen=True)
class Representation:
    """An assignment of group elements to the 2g generators a_1,b_1,...

    Immutable; ``residual`` is the Frobenius norm of prod [A_i, B_i] - I
    cached at construction.  ``inverses`` are cached since every word
    evaluation needs them.
    """

    spec: LieGroupSpec
    genus: int
    matrices: tuple
    residual: float = field(init=False)
    inverses: tuple = field(init=False)

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("genus must be >= 2")
        if len(self.matrices) != 2 * self.genus:
            raise ValueError("need 2*genus generator matrices")
        mats = []
        for m in self.matrices:
            m = np.array(m, dtype=complex)
            if m.shape != (self.spec.n, self.spec.n):
                raise ValueError(f"matrix shape {m.shape} != n={self.spec.n}")
            if self.spec.kind == lie.SL and abs(np.linalg.det(m) - 1.0) > 1e-8:
                raise ValueError(f"determinant {np.linalg.det(m):.6f} != 1 for SL")
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "matrices", tuple(mats))
        invs = tuple(np.linalg.inv(m) for m in mats)
        for m in invs:
            m.setflags(write=False)
        object.__setattr__(self, "inverses", invs)
        object.__setattr__(self, "residual", _relation_residual(self))

    def is_flat(self, tol: float = FLAT_TOL) -> bool:
        return self.residual <= tol

    def to_json(self) -> dict:
        return {
            "group": self.spec.kind,
            "n": self.spec.n,
            "genus": self.genus,
            "matrices": [_matrix_to_json(m) for m in self.matrices],
            "residual": self.residual,
        }

    @staticmethod
    def from_json(data: dict) -> "Representation":
        spec = lie.group_spec(data["group"], data["n"])
        mats = tuple(_matrix_from_json(m, data["n"]) for m in data["matrices"])
        return Representation(spec, data["genus"], mats)

    def content_hash(self) -> str:
        payload = json.dumps(self.to_json(), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _matrix_to_json(m: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in m.reshape(-1)]


def _matrix_from_json(pairs: list, n: int) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in pairs])
    return flat.reshape(n, n)


def _relation_residual(rep: Representation) -> float:
    # Commutators of invertible scalars are identically 1, so the torus
    # relation residual is exactly zero; computing it in floats would only
    # inject spurious rounding noise.
    if rep.spec.n == 1:
        return 0.0
    image = evaluate_word(rep, relator(rep.genus))
    return float(np.linalg.norm(image - np.eye(rep.spec.n)))


def relation_residual(rep: Representation) -> float:
    """Frobenius norm of prod_i [A_i, B_i] - I."""
    return rep.residual


def conjugate(rep: Representation, g: np.ndarray) -> Representation:
    """Conjugate every generator matrix by g."""
    g = np.asarray(g, dtype=complex)
    ginv = np.linalg.inv(g)
    mats = tuple(g @ m @ ginv for m in rep.matrices)
    if rep.spec.kind == lie.SL:
        mats = tuple(_det_normalize(m) for m in mats)
    return Representation(rep.spec, rep.genus, mats)


def perturb(rep: Representation, cochain: np.ndarray, t: float = 1.0) -> Representation:
    """Left-translate each generator: A_j <- exp(t u_j) A_j.

    Left multiplication matches the crossed-homomorphism convention
    u(xy) = u(x) + Ad(rho(x)) u(y) for tangent cochains.
    """
    mats = []
    for j, m in enumerate(rep.matrices):
        xi = lie.algebra_matrix(rep.spec, t * np.asarray(cochain[j]))
        mats.append(scipy.linalg.expm(xi) @ m)
    if rep.spec.kind == lie.SL:
        mats = [_det_normalize(m) for m in mats]
    return Representation(rep.spec, rep.genus, tuple(mats))


def _det_normalize(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    det = np.linalg.det(m)
    return m / det ** (1.0 / n)


def _relation_jacobian(spec: LieGroupSpec, genus: int, mats, invs):
    """Jacobian of vec(rho(R)) with respect to right-translated tangents
    A_j <- A_j exp(xi_j), xi_j in the algebra basis."""
    word = relator(genus)
    m = len(word)
    n = spec.n
    basis = lie.algebra_basis(spec)
    d = spec.dim_group

    prefixes = [np.eye(n, dtype=complex)]
    for j, e in word:
        prefixes.append(prefixes[-1] @ (mats[j] if e == 1 else invs[j]))
    suffixes = [np.eye(n, dtype=complex)] * (m + 1)
    suf = np.eye(n, dtype=complex)
    for k in range(m - 1, -1, -1):
        suffixes[k + 1] = suf  # suffix strictly after letter k+1 (1-based)
        j, e = word[k]
        suf = (mats[j] if e == 1 else invs[j]) @ suf

    cols = np.zeros((n * n, 2 * genus * d), dtype=complex)
    for k, (j, e) in enumerate(word):
        pre = prefixes[k]
        suf = suffixes[k + 1]
        for b_idx, eb in enumerate(basis):
            if e == 1:
                block = pre @ mats[j] @ eb @ suf
            else:
                block = -pre @ eb @ invs[j] @ suf
            cols[:, j * d + b_idx] += block.reshape(-1)
    return cols


def refine(spec: LieGroupSpec, genus: int, matrices, flat_tol: float = FLAT_TOL,
           max_iter: int = 100) -> tuple:
    """Gauss-Newton refinement onto the relation variety.

    Retraction-based multiplicative updates A <- A exp(xi) keep every
    iterate exactly on the group; a backtracking line search damps the
    occasional overshoot.  Returns (matrices, residual, iterations) or
    raises RefinementError carrying the final residual.
    """
    n = spec.n
    d = spec.dim_group
    stop_tol = min(flat_tol, 1e-13)
    mats = [np.array(m, dtype=complex) for m in matrices]

    def residual_of(ms):
        if n == 1:
            return 0.0
        out = np.eye(n, dtype=complex)
        invs_ = [np.linalg.inv(m) for m in ms]
        for j, e in relator(genus):
            out = out @ (ms[j] if e == 1 else invs_[j])
        return float(np.linalg.norm(out - np.eye(n)))

    res = residual_of(mats)
    iterations = 0
    for iterations in range(1, max_iter + 1):
        if res <= stop_tol:
            break
        invs = [np.linalg.inv(m) for m in mats]
        image = np.eye(n, dtype=complex)
        for j, e in relator(genus):
            image = image @ (mats[j] if e == 1 else invs[j])
        rhs = -(image - np.eye(n)).reshape(-1)
        jac = _relation_jacobian(spec, genus, mats, invs)
        xi, *_ = np.linalg.lstsq(jac, rhs, rcond=None)

        alpha = 1.0
        while alpha > 1e-8:
            trial = []
            for j in range(2 * genus):
                step = lie.algebra_matrix(spec, alpha * xi[j * d:(j + 1) * d])
                mat = mats[j] @ scipy.linalg.expm(step)
                if spec.kind == lie.SL:
                    mat = _det_normalize(mat)
                trial.append(mat)
            trial_res = residual_of(trial)
            if trial_res < res:
                mats, res = trial, trial_res
                break
            alpha *= 0.5
        else:
            break  # no productive step left
    if res > flat_tol:
        raise RefinementError(res, iterations, flat_tol)
    return tuple(mats), res, iterations


def random_flat_representation(spec: LieGroupSpec, genus: int, seed: int,
                               scale: float = 0.5, flat_tol: float = FLAT_TOL,
                               max_iter: int = 100) -> Representation:
    """Deterministic random point of the relation variety.

    Generators start at exp(xi) with xi a complex Gaussian algebra element
    of the given scale, then Gauss-Newton pulls the tuple onto the relation
    variety.  scale 0 returns the trivial representation unchanged.
    """
    if genus < 2:
        raise ValueError("genus must be >= 2")
    if scale < 0:
        raise ValueError("scale must be >= 0")
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(2 * genus):
        coords = lie.random_algebra_coords(spec, rng, scale)
        mats.append(scipy.linalg.expm(lie.algebra_matrix(spec, coords)))
    if spec.n > 1 and scale > 0:
        mats, _, _ = refine(spec, genus, mats, flat_tol, max_iter)
    return Representation(spec, genus, tuple(mats))


def is_irreducible(rep: Representation, rank_tol: float = RANK_TOL) -> bool:
    """Burnside test: irreducible iff words in the generators span the full
    matrix algebra.

    Proper parabolic subgroups of GL(n)/SL(n) are flag stabilizers, so
    reducibility is the existence of a common invariant subspace, which is
    detected by the generated algebra having dimension < n^2.  Word length
    is capped at 2 n^2 (the span stabilizes well before by dimension
    count).  The torus has no proper parabolic subgroups, so every
    representation counts as irreducible.  A projection residual inside the
    indeterminate band raises RankAmbiguousError instead of guessing.
    """
    if rep.spec.kind == lie.TORUS:
        return True
    n = rep.spec.n
    lo, hi = rank_tol / BAND_FACTOR, rank_tol * BAND_FACTOR
    target = n * n

    def unit_vec(m):
        v = m.reshape(-1)
        return v / np.linalg.norm(v)

    basis_vecs = [unit_vec(np.eye(n, dtype=complex))]
    frontier = [np.eye(n, dtype=complex)]
    for _ in range(2 * n * n):
        if len(basis_vecs) == target or not frontier:
            break
        new_frontier = []
        for m in frontier:
            for a in rep.matrices:
                cand = m @ a
                v = unit_vec(cand)
                q = np.stack(basis_vecs, axis=1)
                # two rounds of Gram-Schmidt for orthogonality at roundoff
                r = v - q @ (q.conj().T @ v)
                r = r - q @ (q.conj().T @ r)
                nr = np.linalg.norm(r)
                if nr > hi:
                    basis_vecs.append(r / nr)
                    new_frontier.append(cand)
                    if len(basis_vecs) == target:
                        break
                elif nr > lo:
                    raise RankAmbiguousError(nr, (lo, hi))
            if len(basis_vecs) == target:
                break
        frontier = new_frontier
    return len(basis_vecs) == target


def upper_triangular_flat_representation(genus: int, seed: int,
                                         scale: float = 0.5) -> Representation:
    """Flat SL(2) representation that is reducible by construction.

    Extension of a C*-local system by its inverse: each generator factors
    as U(x) diag(a, 1/a) with U(x) unipotent.  The coordinates x form a
    1-cochain twisted by the character a^2, so the surface relation holds
    exactly iff the a^2-twisted relator derivative annihilates x, one
    linear condition; the random x is projected onto that hyperplane.
    """
    rng = np.random.default_rng(seed)
    diag = np.exp(scale * (rng.standard_normal(2 * genus)
                           + 1j * rng.standard_normal(2 * genus)))
    x = rng.standard_normal(2 * genus) + 1j * rng.standard_normal(2 * genus)

    # relator Fox derivative through the character chi(x_j) = a_j^2; the
    # twisting is scalar multiplication by chi, not the (trivial) adjoint
    chi = diag * diag
    row = np.zeros(2 * genus, dtype=complex)
    prefix = 1.0 + 0j
    for j, e in relator(genus):
        if e == 1:
            row[j] += prefix
            prefix *= chi[j]
        else:
            prefix /= chi[j]
            row[j] -= prefix
    # project x onto the hyperplane row . x = 0
    x = x - row.conj() * (row @ x) / np.linalg.norm(row) ** 2

    mats = []
    for a, xj in zip(diag, x):
        mats.append(np.array([[a, xj / a], [0.0, 1.0 / a]], dtype=complex))
    return Representation(lie.group_spec(lie.SL, 2), genus, tuple(mats))
