"""Stable two- and three-forms in dimension six and their induced geometry.

For a three-form rho the endomorphism K_rho(v) = kappa((v -| rho) ^ rho),
the quartic invariant lambda(rho) = tr(K_rho^2)/6 and, for stable rho
(lambda != 0), the (para-)complex structure J_rho = K_rho / phi(rho) are
computed exactly.  Here phi(rho) is represented as sqrt(|lambda|) times the
reference volume with the positive root; for lambda < 0 the literal square
root does not exist in Lambda^6 and this choice, together with calibrated
sign constants and the orientation branch sign(phi(omega)), absorbs all
orientation conventions.  The calibration constants (one per sign of
lambda) are re-derived at import from the two model frames below, which
must reproduce their standard metrics.

A compatible (omega ^ rho = 0) pair of stable forms induces the metric
g = eps * omega(. , J_rho .).  The matrix G_raw with
G_raw[u][v] = eps * omega(e_u, K_rho e_v) satisfies g = G_raw/sqrt(|lambda|)
up to the orientation branch, so definiteness and signatures are decided
without leaving the field of the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exterior, linalg
from .errors import NotCompatibleError, NotStableError
from .exterior import DIM, KForm, Vector, contract, form, kappa, volume_ratio, wedge
from .scalars import (
    Scalar,
    scalar_abs,
    scalar_is_zero,
    scalar_sign,
    sqrt_scalar,
)

KIND_SU3 = "SU(3)"
KIND_SU21 = "SU(2,1)"
KIND_SU12 = "SU(1,2)"
KIND_SU03 = "SU(0,3)"
KIND_SL3R = "SL(3,R)"
KIND_NOT_STABLE = "NotStable"
KIND_NOT_COMPATIBLE = "NotCompatible"
KIND_NOT_NORMALIZABLE = "NotNormalizable"

STABILIZER_KINDS = (KIND_SU3, KIND_SU21, KIND_SU12, KIND_SU03, KIND_SL3R)

_SU_KIND_BY_SIGNATURE = {
    (6, 0): KIND_SU3,
    (4, 2): KIND_SU21,
    (2, 4): KIND_SU12,
    (0, 6): KIND_SU03,
}


@dataclass(frozen=True)
class StructureType:
    """Stabilizer kind of a pair of forms plus the exact metric signature."""

    kind: str
    signature: tuple[int, int, int] | None = None

    @property
    def is_stabilizer(self) -> bool:
        return self.kind in STABILIZER_KINDS


def k_matrix(rho: KForm) -> linalg.Matrix:
    """K_rho relative to the reference volume; column j is K_rho(e_j)."""
    if rho.degree != 3:
        raise NotStableError("K is defined for three-forms")
    cols = []
    for j in range(1, DIM + 1):
        xi = wedge(contract(Vector.basis(j), rho), rho)
        x, _ = kappa(xi)
        cols.append(x.components)
    return [[cols[j][i] for j in range(DIM)] for i in range(DIM)]


def lambda_of(rho: KForm, K: linalg.Matrix | None = None) -> Scalar:
    """Quartic invariant lambda(rho) = tr(K_rho^2)/6 relative to nu^2."""
    K = k_matrix(rho) if K is None else K
    tr: Scalar = Fraction(0)
    for i in range(DIM):
        for j in range(DIM):
            tr = tr + K[i][j] * K[j][i]
    return tr / 6


def phi_omega(omega: KForm) -> Scalar:
    """phi(omega) = omega^3 / 6 as a multiple of the reference volume."""
    if omega.degree != 2:
        raise NotStableError("phi(omega) is defined for two-forms")
    top = wedge(wedge(omega, omega), omega)
    v = volume_ratio(top)
    return v / 6


def omega_matrix(omega: KForm) -> linalg.Matrix:
    """Antisymmetric matrix of omega(e_u, e_v)."""
    m = linalg.zeros(DIM, DIM)
    for mask, coeff in omega.terms.items():
        idx = [i + 1 for i in range(DIM) if mask >> i & 1]
        u, v = idx
        m[u - 1][v - 1] = coeff
        m[v - 1][u - 1] = -coeff
    return m


MODEL_OMEGA = form(2, [("e1f1", Fraction(-1)), ("e2f2", Fraction(-1)), ("e3f3", Fraction(-1))])
#: real part of (e^1 + i f^1) ^ (e^2 + i f^2) ^ (e^3 + i f^3)
MODEL_RHO = form(
    3,
    [("e123", Fraction(1)), ("e3f12", Fraction(-1)), ("e2f13", Fraction(1)), ("e1f23", Fraction(-1))],
)
#: para-complex counterpart: e^123 + f^123 with the same fundamental two-form
MODEL_RHO_PARA = form(3, [("e123", Fraction(1)), ("f123", Fraction(1))])
#: metric of the para model frame: g(e_i, f_i) = 1, all else zero
_MODEL_PARA_METRIC = [
    [Fraction(1) if abs(i - j) == 3 else Fraction(0) for j in range(DIM)]
    for i in range(DIM)
]


def _calibrate_epsilon(rho: KForm, expected: linalg.Matrix) -> int:
    """Sign constant in g = eps * omega(., J_rho .), pinned by a model frame.

    The pseudo-orthonormal model frames must reproduce their standard
    metrics; the signs are derived here rather than hard-coded so the
    convention stays consistent with the kappa/volume choices above.
    """
    K = k_matrix(rho)
    lam = lambda_of(rho, K)
    root = sqrt_scalar(scalar_abs(lam))
    g_unsigned = linalg.mat_mul(omega_matrix(MODEL_OMEGA), K)
    for eps in (1, -1):
        g = [[eps * x / root for x in row] for row in g_unsigned]
        if linalg.mat_eq(g, expected):
            return eps
    raise AssertionError("model frame failed to calibrate the metric sign")


#: metric sign for lambda < 0, from the pseudo-Hermitian model frame
EPSILON: int = _calibrate_epsilon(MODEL_RHO, linalg.identity(DIM))
#: metric sign for lambda > 0, from the para-Hermitian model frame
EPSILON_PARA: int = _calibrate_epsilon(MODEL_RHO_PARA, _MODEL_PARA_METRIC)


def epsilon_for(lam: Scalar) -> int:
    """Calibrated metric sign for the given quartic invariant."""
    return EPSILON_PARA if scalar_sign(lam) > 0 else EPSILON


def is_compatible(omega: KForm, rho: KForm) -> bool:
    """Compatibility omega ^ rho = 0, checked exactly."""
    return wedge(omega, rho).is_zero()


def induced_metric_raw(omega: KForm, rho: KForm) -> tuple[linalg.Matrix, int]:
    """Rational metric matrix G_raw with g = G_raw / sqrt(|lambda|), plus EPSILON.

    Symmetry of G_raw is equivalent to compatibility; an asymmetric result
    raises NotCompatibleError.
    """
    lam = lambda_of(rho)
    if scalar_is_zero(lam) or scalar_is_zero(phi_omega(omega)):
        raise NotStableError("both forms must be stable")
    eps = epsilon_for(lam)
    K = k_matrix(rho)
    g = linalg.mat_mul(omega_matrix(omega), K)
    g = [[eps * x for x in row] for row in g]
    if not linalg.is_symmetric(g):
        raise NotCompatibleError("omega(., K_rho .) is not symmetric: pair not compatible")
    return g, eps


def signature(m: Sequence[Sequence[Scalar]]) -> tuple[int, int, int]:
    """Exact inertia (p, q, z) of a symmetric matrix."""
    if not linalg.is_symmetric(list(map(list, m))):
        raise ValueError("signature requires a symmetric matrix")
    return linalg.inertia(m)


def normalization_scale(omega: KForm, rho: KForm) -> tuple[Scalar, int]:
    """Scale c^4 with |lambda(c rho)| = 4 phi(omega)^2, plus the branch sign.

    The sign reports which branch of phi(rho) = +-2 phi(omega) holds after
    scaling: with phi(rho) the positive root, it is the orientation
    sign(phi(omega)).
    """
    lam = lambda_of(rho)
    w = phi_omega(omega)
    if scalar_is_zero(lam) or scalar_is_zero(w):
        raise NotStableError("normalization requires both forms stable")
    c4 = 4 * w * w / scalar_abs(lam)
    return c4, scalar_sign(w)


def structure_type(omega: KForm, rho: KForm) -> StructureType:
    """Full verdict: stability, compatibility, signature and stabilizer kind.

    The orientation is chosen so that phi(rho) = +2 phi(omega) holds after
    normalization; with that branch a positive-definite induced metric is
    reported as SU(3).
    """
    if omega.degree != 2 or rho.degree != 3:
        return StructureType(KIND_NOT_STABLE)
    w = phi_omega(omega)
    lam = lambda_of(rho)
    if scalar_is_zero(w) or scalar_is_zero(lam):
        return StructureType(KIND_NOT_STABLE)
    if not is_compatible(omega, rho):
        return StructureType(KIND_NOT_COMPATIBLE)
    g, _ = induced_metric_raw(omega, rho)
    o = scalar_sign(w)
    if o < 0:
        g = [[-x for x in row] for row in g]
    p, q, z = linalg.inertia(g)
    if z > 0:
        return StructureType(KIND_NOT_NORMALIZABLE, (p, q, z))
    if scalar_sign(lam) < 0:
        kind = _SU_KIND_BY_SIGNATURE.get((p, q))
        if kind is None:
            return StructureType(KIND_NOT_NORMALIZABLE, (p, q, z))
        return StructureType(kind, (p, q, z))
    if (p, q) == (3, 3):
        return StructureType(KIND_SL3R, (p, q, z))
    return StructureType(KIND_NOT_NORMALIZABLE, (p, q, z))


def j_apply_oneform(rho: KForm, alpha: KForm, v: Vector, lam: Scalar | None = None) -> Scalar:
    """J*_rho alpha (v), exactly, as an element of Q(sqrt(|lambda|)).

    Uses J* alpha (v) phi(rho) = alpha ^ (v -| rho) ^ rho with
    phi(rho) = sqrt(|lambda|) nu (positive root).
    """
    lam = lambda_of(rho) if lam is None else lam
    if scalar_is_zero(lam):
        raise NotStableError("J_rho requires a stable three-form")
    if not isinstance(lam, (int, Fraction)):
        raise NotStableError("J on one-forms needs a rational lambda")
    num = volume_ratio(wedge(wedge(alpha, contract(v, rho)), rho))
    return num / sqrt_scalar(scalar_abs(lam))


def j_matrix_values(rho: KForm, alpha: KForm) -> list[Scalar]:
    """phi-scaled values [alpha ^ (e_v -| rho) ^ rho / nu] for v = 1..6.

    These are sqrt(|lambda|) * (J* alpha)(e_v): rational whenever the inputs
    are, which lets invariance and isotropy checks stay in the base field.
    """
    out = []
    for v in range(1, DIM + 1):
        out.append(volume_ratio(wedge(wedge(alpha, contract(Vector.basis(v), rho)), rho)))
    return out


class StablePair:
    """A candidate pair (omega, rho) with all derived data computed once."""

    __slots__ = (
        "omega",
        "rho",
        "lam",
        "phi_omega",
        "K",
        "G_raw",
        "eps",
        "norm_c4",
        "norm_sign",
        "structure",
    )

    def __init__(self, omega: KForm, rho: KForm):
        self.omega = omega
        self.rho = rho
        self.K = k_matrix(rho)
        self.lam = lambda_of(rho, self.K)
        self.phi_omega = phi_omega(omega)
        self.eps = epsilon_for(self.lam)
        stable = not (scalar_is_zero(self.lam) or scalar_is_zero(self.phi_omega))
        if stable:
            self.norm_c4 = 4 * self.phi_omega * self.phi_omega / scalar_abs(self.lam)
            self.norm_sign = scalar_sign(self.phi_omega)
        else:
            self.norm_c4 = None
            self.norm_sign = 0
        g = linalg.mat_mul(omega_matrix(omega), self.K)
        self.G_raw = [[self.eps * x for x in row] for row in g]
        self.structure = structure_type(omega, rho)

    @property
    def compatible(self) -> bool:
        return linalg.is_symmetric(self.G_raw) and is_compatible(self.omega, self.rho)

    def oriented_metric_raw(self) -> linalg.Matrix:
        """G_raw with the orientation branch applied (positive branch)."""
        if self.norm_sign >= 0:
            return self.G_raw
        return [[-x for x in row] for row in self.G_raw]
