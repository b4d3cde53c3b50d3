"""Twisted group cohomology H^*(pi_1, g_Ad rho) at a representation.

Conventions, fixed once for the whole package and mirrored by the
simplicial oracle: cocycles obey u(xy) = u(x) + Ad(rho(x)) u(y) and the
degree-0 coboundary is (delta0 s)(x) = s - Ad(rho(x)) s.  A 1-cochain is an
array of shape (2g, dim) of algebra-basis coordinates, or equivalently a
flat vector of length 2g*dim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankAmbiguousError
from .lie_backend import ad_matrix
from .rep_variety import FLAT_TOL, RANK_TOL, BAND_FACTOR, Representation
from .surface_group import fox_derivative, relator


def cochain_flat(u: np.ndarray) -> np.ndarray:
    return np.asarray(u, dtype=complex).reshape(-1)


def cochain_blocks(u: np.ndarray, genus: int, dim: int) -> np.ndarray:
    return np.asarray(u, dtype=complex).reshape(2 * genus, dim)


def coboundary_matrix(rep: Representation) -> np.ndarray:
    """delta0 as a (2g*dim, dim) matrix: generator-j block I - Ad(rho(x_j)).

    Its kernel is the centralizer of the image in the Lie algebra.
    """
    d = rep.spec.dim_group
    blocks = [np.eye(d, dtype=complex) - ad_matrix(rep.spec, m)
              for m in rep.matrices]
    return np.concatenate(blocks, axis=0)


def cocycle_matrix(rep: Representation) -> np.ndarray:
    """delta1 as a (dim, 2g*dim) matrix; delta1 u = u(relator).

    Built from Fox derivatives of the relator, so ker(delta1) = Z^1 and,
    at a flat representation, delta1 . delta0 = 0.
    """
    word = relator(rep.genus)
    blocks = [fox_derivative(word, j, rep) for j in range(2 * rep.genus)]
    return np.concatenate(blocks, axis=1)


def cocycle_residual(rep: Representation, u: np.ndarray) -> float:
    """Norm of delta1 u relative to the size of u."""
    d1 = cocycle_matrix(rep)
    u = cochain_flat(u)
    return float(np.linalg.norm(d1 @ u) / max(np.linalg.norm(u), 1.0))


def _singular_values_rank(mat: np.ndarray, rank_tol: float) -> int:
    """Rank by singular-value thresholding with an indeterminate band.

    Singular values are normalized by max(sigma_1, 1); any normalized value
    inside (rank_tol/BAND_FACTOR, rank_tol*BAND_FACTOR) raises rather than
    guessing a rank.
    """
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    scale = max(sv[0], 1.0)
    lo, hi = rank_tol / BAND_FACTOR, rank_tol * BAND_FACTOR
    rank = 0
    for s in sv:
        t = s / scale
        if t >= hi:
            rank += 1
        elif t > lo:
            raise RankAmbiguousError(t, (lo, hi))
    return rank


@dataclass(frozen=True)
class CohomologySpaces:
    """Cocycle and coboundary data at a representation.

    ``representatives`` is a (2g*dim, h1) matrix whose columns are an
    orthonormal basis (standard Hermitian inner product) of the orthogonal
    complement of B^1 inside Z^1.
    """

    rep: Representation
    delta0: np.ndarray
    delta1: np.ndarray
    h0: int
    h1: int
    h2: int
    representatives: np.ndarray

    def to_json(self) -> dict:
        reps = [[ [float(z.real), float(z.imag)] for z in col ]
                for col in self.representatives.T]
        return {
            "h0": self.h0, "h1": self.h1, "h2": self.h2,
            "representatives": reps,
            "rep_hash": self.rep.content_hash(),
        }


def cohomology(rep: Representation, rank_tol: float = RANK_TOL,
               flat_tol: float = FLAT_TOL) -> CohomologySpaces:
    """Compute h0, h1, h2 and H^1 representatives at a flat representation.

    h1 = dim ker(delta1) - rank(delta0); representatives span ker(delta1)
    modulo im(delta0), orthonormalized in the standard Hermitian metric
    (the invariant form is complex-bilinear and indefinite, so it is not
    usable for projections).
    """
    if not rep.is_flat(flat_tol):
        raise ValueError(
            f"representation residual {rep.residual:.3e} exceeds {flat_tol:.1e}")
    d = rep.spec.dim_group
    two_g_d = 2 * rep.genus * d
    d0 = coboundary_matrix(rep)
    d1 = cocycle_matrix(rep)

    if np.linalg.norm(d0) == 0.0 and np.linalg.norm(d1) == 0.0:
        # torus or trivial representation: everything is a cocycle and
        # nothing is a coboundary; the standard basis is the canonical
        # (and exactly reproducible) choice of representatives
        reps = np.eye(two_g_d, dtype=complex)
        return CohomologySpaces(rep, d0, d1, h0=d, h1=two_g_d, h2=d,
                                representatives=reps)

    rank0 = _singular_values_rank(d0, rank_tol)
    rank1 = _singular_values_rank(d1, rank_tol)
    h0 = d - rank0
    h2 = d - rank1
    h1 = (two_g_d - rank1) - rank0

    # null space of delta1
    _, sv, vh = np.linalg.svd(d1)
    null = vh[rank1:].conj().T  # (2gd, dim ker)
    # orthonormal basis of im(delta0)
    u0, sv0, _ = np.linalg.svd(d0, full_matrices=False)
    img = u0[:, :rank0]
    # complement of B^1 inside Z^1
    proj = null - img @ (img.conj().T @ null)
    uu, ss, _ = np.linalg.svd(proj, full_matrices=False)
    reps = uu[:, :h1]
    if h1 > 0 and ss[h1 - 1] < 0.5:
        # at a flat point B^1 sits inside Z^1, so the h1 leading singular
        # values of the projected null basis are all 1 up to roundoff
        raise RankAmbiguousError(float(ss[h1 - 1]), (0.5, 1.0))
    return CohomologySpaces(rep, d0, d1, h0=h0, h1=h1, h2=h2,
                            representatives=reps)


def transport_cochain(spec, g: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Push a cochain along conjugation: u'_j = Ad(g) u_j.

    If u is a cocycle for rho, the result is one for g rho g^{-1}.
    """
    ad = ad_matrix(spec, g)
    blocks = np.asarray(u, dtype=complex).reshape(-1, spec.dim_group)
    return np.stack([ad @ b for b in blocks], axis=0)
