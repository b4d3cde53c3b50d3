"""Moduli-of-connections side for G = C* on hyperelliptic curves.

For y^2 = prod(x - lambda_i) with real ordered branch points the A-cycle
A_i encircles the cut [lambda_{2i-1}, lambda_{2i}] and the B-cycle B_i is
nested through the gaps from lambda_{2i} out to lambda_{2g+1}, giving the
standard symplectic intersection matrix.  Periods reduce to segment
integrals with the square-root endpoint singularity absorbed by
Gauss-Chebyshev quadrature; the branch of y on the upper side of segment m
is i^(2g+2-m) |y|, continued from y ~ x^(g+1) > 0 at +infinity.

The symplectic pairing between H^0(K) and H^1(O) representatives (the
latter taken as conjugates of holomorphic differentials, with conjugate
periods) is evaluated through the bilinear-relation expansion
int a ^ b = sum_i [A_i(a) B_i(b) - B_i(a) A_i(b)], and the pullback check
compares it against the same expansion applied to total de Rham classes,
which is the abelian symplectic pairing on the character-variety side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError

QUADRATURE_TOL = 1e-8
RELATION1_TOL = 1e-6


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 = prod(x - lambda_i) with 2g+2 branch points, g >= 2.

    Real branch points are the validated default; complex ones are only
    accepted behind ``experimental`` and are rejected by the period
    quadrature (path layout unvalidated).
    """

    branch_points: tuple
    experimental: bool = False

    def __post_init__(self):
        pts = tuple(complex(z) for z in self.branch_points)
        if len(pts) < 6:
            raise ValueError("need at least 6 branch points (genus >= 2)")
        if len(pts) % 2 != 0:
            raise ValueError("odd branch-point count not supported; "
                             "use an even count 2g+2")
        is_real = all(abs(z.imag) == 0.0 for z in pts)
        if not is_real and not self.experimental:
            raise ValueError("complex branch points require experimental=True")
        if is_real:
            pts = tuple(sorted(z.real for z in pts))
            gaps = [pts[i + 1] - pts[i] for i in range(len(pts) - 1)]
            if min(gaps) <= 1e-8:
                raise ValueError(f"branch points too close: min gap {min(gaps):.3e}")
            object.__setattr__(self, "branch_points", pts)
        else:
            vals = [abs(a - b) for i, a in enumerate(pts)
                    for b in pts[i + 1:]]
            if min(vals) <= 1e-8:
                raise ValueError("branch points too close")
            object.__setattr__(self, "branch_points", pts)

    @property
    def is_real(self) -> bool:
        return all(isinstance(z, float) or abs(complex(z).imag) == 0.0
                   for z in self.branch_points)

    @property
    def genus(self) -> int:
        return len(self.branch_points) // 2 - 1

    def to_json(self) -> dict:
        if self.is_real:
            return {"branch_points": [float(z) for z in self.branch_points]}
        return {"branch_points": [[z.real, z.imag] for z in
                                  map(complex, self.branch_points)]}


def holomorphic_basis(curve: HyperellipticCurve) -> list:
    """Descriptors of the g differentials x^(j-1) dx / y, j = 1..g."""
    return [{"power": j, "label": f"x^{j} dx/y"} for j in range(curve.genus)]


def _segment_integrals(lam: np.ndarray, m: int, powers, order: int) -> np.ndarray:
    """int_seg x^p dx / |y| for segment m (1-based, between lam_m, lam_{m+1})
    by Gauss-Chebyshev of the given order."""
    a, b = lam[m - 1], lam[m]
    mid, rad = 0.5 * (a + b), 0.5 * (b - a)
    theta = (2 * np.arange(1, order + 1) - 1) * np.pi / (2 * order)
    x = mid + rad * np.cos(theta)
    others = np.array([lam[i] for i in range(len(lam)) if i not in (m - 1, m)])
    q = np.prod(np.abs(x[:, None] - others[None, :]), axis=1)
    vals = []
    for p in powers:
        vals.append(np.pi / order * np.sum(x ** p / np.sqrt(q)))
    return np.array(vals)


def _period_matrices(curve: HyperellipticCurve, order: int):
    g = curve.genus
    lam = np.array([z.real for z in map(complex, curve.branch_points)])
    powers = list(range(g))

    def upper_phase(m: int) -> complex:
        # 1 / y_up on segment m carries i^{-(2g+2-m)}
        return (1j) ** ((-(2 * g + 2 - m)) % 4)

    seg = {m: _segment_integrals(lam, m, powers, order)
           for m in range(1, 2 * g + 2)}
    pi_a = np.zeros((g, g), dtype=complex)
    pi_b = np.zeros((g, g), dtype=complex)
    for i in range(1, g + 1):
        m_cut = 2 * i - 1
        pi_a[i - 1] = 2.0 * upper_phase(m_cut) * seg[m_cut]
        acc = np.zeros(g, dtype=complex)
        for k in range(i, g + 1):
            m_gap = 2 * k
            acc = acc + upper_phase(m_gap) * seg[m_gap]
        pi_b[i - 1] = 2.0 * acc
    return pi_a, pi_b


def _relation1_residual(pi_a: np.ndarray, pi_b: np.ndarray) -> float:
    # rows index cycles, so the bilinear relation sum_i [A_i B_i' - B_i A_i']
    # contracts over rows: Pi_A^T Pi_B must be symmetric
    m1 = pi_a.T @ pi_b
    m2 = pi_b.T @ pi_a
    return float(np.linalg.norm(m1 - m2)
                 / max(np.linalg.norm(m1), np.linalg.norm(m2), 1e-300))


def _relation2_matrix(pi_a: np.ndarray, pi_b: np.ndarray) -> np.ndarray:
    return 1j * (pi_a.T @ pi_b.conj() - pi_b.T @ pi_a.conj())


@dataclass(frozen=True)
class PeriodData:
    """A/B period matrices in the standard hyperelliptic cycle basis.

    Rows index cycles, columns the differentials x^(j-1) dx/y.  The
    orientation is normalized so the second Riemann relation matrix is
    positive definite, matching the sign convention of the group-cohomology
    pairing through the torus cross-check.
    """

    curve: HyperellipticCurve
    pi_a: np.ndarray
    pi_b: np.ndarray
    intersection: np.ndarray
    quadrature_order: int
    drift: float
    relation1_residual: float
    relation2_eigenvalues: tuple

    @property
    def genus(self) -> int:
        return self.curve.genus

    def cycle_descriptions(self) -> list:
        g = self.genus
        out = []
        for i in range(1, g + 1):
            out.append({"cycle": f"A{i}", "encircles": [2 * i - 1, 2 * i]})
        for i in range(1, g + 1):
            out.append({"cycle": f"B{i}", "encircles": [2 * i, 2 * g + 1]})
        return out

    def to_json(self) -> dict:
        def cmat(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]
        return {
            "curve": self.curve.to_json(),
            "cycles": self.cycle_descriptions(),
            "pi_a": cmat(self.pi_a),
            "pi_b": cmat(self.pi_b),
            "intersection": [[int(v) for v in row] for row in self.intersection],
            "quadrature_order": self.quadrature_order,
            "drift": self.drift,
            "relation1_residual": self.relation1_residual,
            "relation2_eigenvalues": [float(v) for v in self.relation2_eigenvalues],
        }


def periods(curve: HyperellipticCurve, quadrature_order: int = 128) -> PeriodData:
    """Numerical A/B periods with a doubling convergence certificate.

    Integrates at the requested order and at twice that order; a relative
    drift above 1e-8 raises QuadratureError.  Both Riemann bilinear
    relations are computed and stored; a sign-flipped B-row set records the
    orientation so that relation II comes out positive definite.
    """
    if curve.genus < 2:
        raise ValueError("genus must be >= 2")
    if not curve.is_real:
        raise ValueError("period quadrature supports real branch points only "
                         "(complex layout is experimental and unvalidated)")
    if quadrature_order < 16:
        raise ValueError("quadrature_order must be >= 16")
    pa1, pb1 = _period_matrices(curve, quadrature_order)
    pa2, pb2 = _period_matrices(curve, 2 * quadrature_order)
    scale = max(np.abs(pa2).max(), np.abs(pb2).max())
    drift = max(np.abs(pa1 - pa2).max(), np.abs(pb1 - pb2).max()) / scale
    if drift > QUADRATURE_TOL:
        raise QuadratureError(drift, QUADRATURE_TOL, quadrature_order)
    pi_a, pi_b = pa2, pb2

    eigs = np.linalg.eigvalsh(_relation2_matrix(pi_a, pi_b))
    if np.all(eigs < 0):
        pi_b = -pi_b
        eigs = np.linalg.eigvalsh(_relation2_matrix(pi_a, pi_b))

    g = curve.genus
    inter = np.zeros((2 * g, 2 * g), dtype=int)
    inter[:g, g:] = np.eye(g, dtype=int)
    inter[g:, :g] = -np.eye(g, dtype=int)

    pi_a.setflags(write=False)
    pi_b.setflags(write=False)
    return PeriodData(
        curve=curve, pi_a=pi_a, pi_b=pi_b, intersection=inter,
        quadrature_order=quadrature_order, drift=float(drift),
        relation1_residual=_relation1_residual(pi_a, pi_b),
        relation2_eigenvalues=tuple(float(v) for v in eigs),
    )


def _validate_period_data(data: PeriodData) -> None:
    if data.relation1_residual > RELATION1_TOL:
        raise ValueError(
            f"degenerate period data: relation I residual "
            f"{data.relation1_residual:.3e}")
    eigs = np.array(data.relation2_eigenvalues)
    if not (np.all(eigs > 0) or np.all(eigs < 0)):
        raise ValueError("degenerate period data: relation II not definite")
    if abs(np.linalg.det(data.pi_a)) < 1e-12:
        raise ValueError("degenerate period data: Pi_A not invertible")


def _wedge(av, bv, aw, bw) -> complex:
    """int alpha ^ beta from period vectors in a symplectic cycle basis."""
    return complex(av @ bw - bv @ aw)


def _tangent_periods(data: PeriodData, eta: np.ndarray, phi: np.ndarray):
    """Period vectors of eta_j omega_j + phi_j conj(omega_j)."""
    av = data.pi_a @ eta + data.pi_a.conj() @ phi
    bv = data.pi_b @ eta + data.pi_b.conj() @ phi
    return av, bv


def serre_pairing(data: PeriodData, v, w, form_scale: float = 1.0) -> complex:
    """Moduli-side symplectic pairing of two tangent vectors.

    A tangent vector is a pair (eta, phi) in C^g x C^g: eta in the basis
    x^(j-1) dx/y of H^0(K), phi in the conjugate-differential
    representatives of H^1(O).  The value is
    int eta_v ^ phi_w + int phi_v ^ eta_w, each wedge expanded through
    periods; pure (1,0) x (1,0) and (0,1) x (0,1) terms vanish pointwise
    and are never summed, so pure-type pairings are exact zeros.
    """
    _validate_period_data(data)
    g = data.genus
    eta_v, phi_v = (np.asarray(x, dtype=complex).reshape(g) for x in v)
    eta_w, phi_w = (np.asarray(x, dtype=complex).reshape(g) for x in w)
    zero = np.zeros(g)
    term1 = _wedge(*_tangent_periods(data, eta_v, zero),
                   *_tangent_periods(data, zero, phi_w))
    term2 = _wedge(*_tangent_periods(data, zero, phi_v),
                   *_tangent_periods(data, eta_w, zero))
    return form_scale * (term1 + term2)


def serre_gram(data: PeriodData, form_scale: float = 1.0) -> np.ndarray:
    """Gram matrix of the pairing on the standard 2g tangent coordinates."""
    g = data.genus
    basis = []
    for j in range(g):
        eta = np.zeros(g)
        eta[j] = 1.0
        basis.append((eta, np.zeros(g)))
    for j in range(g):
        phi = np.zeros(g)
        phi[j] = 1.0
        basis.append((np.zeros(g), phi))
    gram = np.zeros((2 * g, 2 * g), dtype=complex)
    for i, vi in enumerate(basis):
        for j, vj in enumerate(basis):
            gram[i, j] = serre_pairing(data, vi, vj, form_scale)
    return gram


def rh_pullback_check(curve: HyperellipticCurve, data: PeriodData, v, w,
                      form_scale: float = 1.0) -> tuple:
    """Desk-scale check that the monodromy pullback preserves the pairing.

    lhs: moduli-side pairing of (eta, phi) tangent pairs.  rhs: the
    character-variety pairing of their images, i.e. the total de Rham
    classes eta + phi paired through their period vectors by the same
    bilinear-relation expansion (the abelian symplectic form on
    H^1 of the surface, tangent to Hom(pi_1, C*) = (C*)^2g).
    Returns (lhs, rhs, relative error).
    """
    _validate_period_data(data)
    g = data.genus
    eta_v, phi_v = (np.asarray(x, dtype=complex).reshape(g) for x in v)
    eta_w, phi_w = (np.asarray(x, dtype=complex).reshape(g) for x in w)
    lhs = serre_pairing(data, v, w, form_scale)
    av, bv = _tangent_periods(data, eta_v, phi_v)
    aw, bw = _tangent_periods(data, eta_w, phi_w)
    rhs = form_scale * _wedge(av, bv, aw, bw)
    rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    return lhs, rhs, float(rel)
