"""Matrix-group backends: GL(n,C), SL(n,C) and the torus C* = GL(1,C).

Provides the Lie algebra of each backend as an explicit matrix basis, the
adjoint action in that basis, and the invariant trace form.  All downstream
cohomology is done in algebra-basis coordinates, so the basis ordering here
is fixed and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

GL = "GL"
SL = "SL"
TORUS = "TORUS"

_KINDS = (GL, SL, TORUS)


@dataclass(frozen=True)
class LieGroupSpec:
    """One of the three group backends, with its dimension data.

    ``dim_group`` is the dimension of the group, ``dim_center`` that of its
    center: n^2 and 1 for GL(n), n^2-1 and 0 for SL(n), 1 and 1 for C*.
    """

    kind: str
    n: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == TORUS and self.n != 1:
            raise ValueError("TORUS is GL(1); matrix size must be 1")
        if self.n < 1:
            raise ValueError("matrix size must be positive")
        if self.kind == SL and self.n < 2:
            raise ValueError("SL(n) needs n >= 2")

    @property
    def dim_group(self) -> int:
        if self.kind == SL:
            return self.n * self.n - 1
        if self.kind == TORUS:
            return 1
        return self.n * self.n

    @property
    def dim_center(self) -> int:
        return 0 if self.kind == SL else 1


def group_spec(kind: str, n: int = 1) -> LieGroupSpec:
    if kind == TORUS:
        return LieGroupSpec(TORUS, 1)
    return LieGroupSpec(kind, n)


@lru_cache(maxsize=None)
def _basis_tuple(spec: LieGroupSpec):
    n = spec.n
    mats = []
    if spec.kind == TORUS:
        mats.append(np.array([[1.0 + 0j]]))
    elif spec.kind == GL:
        for i in range(n):
            for j in range(n):
                e = np.zeros((n, n), dtype=complex)
                e[i, j] = 1.0
                mats.append(e)
    else:  # SL: off-diagonal elementary matrices, then traceless diagonals
        for i in range(n):
            for j in range(n):
                if i != j:
                    e = np.zeros((n, n), dtype=complex)
                    e[i, j] = 1.0
                    mats.append(e)
        for k in range(n - 1):
            h = np.zeros((n, n), dtype=complex)
            h[k, k] = 1.0
            h[k + 1, k + 1] = -1.0
            mats.append(h)
    for m in mats:
        m.setflags(write=False)
    return tuple(mats)


def algebra_basis(spec: LieGroupSpec) -> list:
    """Ordered basis of the Lie algebra as n x n matrices.

    GL(n): elementary matrices E_ij in row-major order.  SL(n): E_ij with
    i != j in row-major order followed by diag(0..,1,-1,..0).  TORUS: [1].
    """
    return list(_basis_tuple(spec))


def algebra_coords(spec: LieGroupSpec, mat: np.ndarray) -> np.ndarray:
    """Coordinates of an algebra element in the fixed basis.

    Closed-form extraction (entry reads and partial sums), so basis
    elements map to exact unit vectors and Ad at the identity is the exact
    identity matrix.
    """
    mat = np.asarray(mat, dtype=complex)
    n = spec.n
    if spec.kind == TORUS:
        return np.array([mat[0, 0]])
    if spec.kind == GL:
        return mat.reshape(-1).copy()
    coords = [mat[i, j] for i in range(n) for j in range(n) if i != j]
    acc = 0.0 + 0.0j
    for k in range(n - 1):
        acc = acc + mat[k, k]
        coords.append(acc)
    return np.array(coords)


def algebra_matrix(spec: LieGroupSpec, coords: np.ndarray) -> np.ndarray:
    """Matrix realization of a coordinate vector."""
    coords = np.asarray(coords, dtype=complex)
    mat = np.zeros((spec.n, spec.n), dtype=complex)
    for c, b in zip(coords, _basis_tuple(spec)):
        mat = mat + c * b
    return mat


def check_algebra_element(spec: LieGroupSpec, mat: np.ndarray, tol: float = 1e-10) -> None:
    if spec.kind == SL and abs(np.trace(mat)) > tol:
        raise ValueError(f"SL algebra element has trace {np.trace(mat):.3e}")


def ad_action(g: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Adjoint action g x g^{-1}."""
    return g @ x @ np.linalg.inv(g)


def ad_matrix(spec: LieGroupSpec, g: np.ndarray) -> np.ndarray:
    """Matrix of Ad_g on algebra-basis coordinates."""
    if spec.kind == TORUS:
        return np.eye(1, dtype=complex)
    ginv = np.linalg.inv(g)
    cols = [algebra_coords(spec, g @ b @ ginv) for b in _basis_tuple(spec)]
    return np.stack(cols, axis=1)


@lru_cache(maxsize=None)
def _gram_cached(spec: LieGroupSpec) -> np.ndarray:
    basis = _basis_tuple(spec)
    d = len(basis)
    gram = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            if spec.kind == TORUS:
                gram[i, j] = basis[i][0, 0] * basis[j][0, 0]
            else:
                gram[i, j] = np.trace(basis[i] @ basis[j])
    gram.setflags(write=False)
    return gram


def form_gram(spec: LieGroupSpec, basis=None) -> np.ndarray:
    """Gram matrix of the invariant form B on the algebra basis.

    B(X,Y) = trace(XY) for GL/SL and plain multiplication for the torus.
    The trace form is preferred over the Killing form because it stays
    nondegenerate on the center of gl(n).
    """
    if basis is not None:
        d = len(basis)
        gram = np.zeros((d, d), dtype=complex)
        for i in range(d):
            for j in range(d):
                if spec.kind == TORUS:
                    gram[i, j] = basis[i][0, 0] * basis[j][0, 0]
                else:
                    gram[i, j] = np.trace(basis[i] @ basis[j])
        return gram
    return _gram_cached(spec).copy()


@dataclass(frozen=True)
class InvariantForm:
    """The invariant bilinear form, with an overall scale.

    Every symplectic quantity downstream is linear in this scale; the
    default scale 1 is the plain trace form.
    """

    spec: LieGroupSpec
    scale: float = 1.0

    @property
    def gram(self) -> np.ndarray:
        return self.scale * _gram_cached(self.spec)

    def pair(self, x: np.ndarray, y: np.ndarray) -> complex:
        """B(X, Y) on matrices."""
        if self.spec.kind == TORUS:
            return self.scale * complex(x[0, 0] * y[0, 0])
        return self.scale * complex(np.trace(x @ y))

    def pair_coords(self, x: np.ndarray, y: np.ndarray) -> complex:
        """B on coordinate vectors (complex-bilinear, no conjugation)."""
        return complex(x @ self.gram @ y)


def random_algebra_coords(spec: LieGroupSpec, rng: np.random.Generator,
                          scale: float = 1.0) -> np.ndarray:
    """Complex Gaussian coordinate vector, used for sampling group elements."""
    d = spec.dim_group
    return scale * (rng.standard_normal(d) + 1j * rng.standard_normal(d))
