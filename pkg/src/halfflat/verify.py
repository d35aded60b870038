"""Half-flat verdicts and constructive families of half-flat structures.

A pair (omega, rho) of stable forms on a six-dimensional Lie algebra is
half-flat when d rho = 0, d omega^2 = 0 and omega ^ rho = 0.  ``verify``
evaluates the full exact pipeline and reports stability, compatibility,
normalization, signature and the stabilizer kind.

The constructors cover the orthogonal ansatz on direct sums (type I with
omega = e1f1 + e2f2 + e3f3, and the three type II solution cases with
omega = a e12 + b e1f1 + b e2f2 + e3f3 - a f12, b = sqrt(1-a^2)) and the
para-complex construction with rho = e123 + f123 whose eigenspaces are the
two summands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, stable
from .errors import DomainError, NotStableError
from .exterior import KForm, Vector, contract, form, volume_ratio, wedge
from .liealg import LieAlgebra, direct_sum
from .scalars import Scalar, is_square, rational_sqrt, scalar_is_zero
from .stable import STABILIZER_KINDS, StructureType


@dataclass
class HalfFlatReport:
    """Machine-readable verdict for one candidate structure."""

    d_rho_zero: bool
    d_omega2_zero: bool
    compatible: bool
    structure: StructureType
    norm_c4: Scalar | None = None
    norm_sign: int = 0
    lam: Scalar | None = None
    isotropic_witness: tuple[KForm, KForm] | None = None
    witness_plane_invariant: bool | None = None
    detail: str = ""

    @property
    def half_flat(self) -> bool:
        return (
            self.d_rho_zero
            and self.d_omega2_zero
            and self.compatible
            and self.structure.kind in STABILIZER_KINDS
        )

    def to_text(self) -> str:
        lines = [
            f"half_flat: {_yn(self.half_flat)}",
            f"d_rho_zero: {_yn(self.d_rho_zero)}",
            f"d_omega2_zero: {_yn(self.d_omega2_zero)}",
            f"compatible: {_yn(self.compatible)}",
            f"type: {self.structure.kind}",
        ]
        if self.structure.signature is not None:
            p, q, z = self.structure.signature
            lines.append(f"signature: ({p},{q},{z})")
        if self.lam is not None:
            lines.append(f"lambda: {self.lam}")
        if self.norm_c4 is not None:
            lines.append(f"norm_c4: {self.norm_c4}")
            lines.append(f"norm_sign: {'+' if self.norm_sign >= 0 else '-'}")
        if self.isotropic_witness is not None:
            lines.append("isotropic_plane: confirmed")
            lines.append(f"plane_j_invariant: {_yn(bool(self.witness_plane_invariant))}")
        if self.detail:
            lines.append(f"detail: {self.detail}")
        return "\n".join(lines)


def _yn(b: bool) -> str:
    return "true" if b else "false"


def verify(
    L: LieAlgebra,
    omega: KForm,
    rho: KForm,
    plane: tuple[KForm, KForm] | None = None,
) -> HalfFlatReport:
    """Exact half-flat verdict for (omega, rho) on L.

    When ``plane`` names two one-forms, the report also records whether
    their span is isotropic for the induced metric and J-invariant; both
    checks stay rational by scaling with phi(rho).
    """
    if L.dim != 6:
        raise ValueError("verification runs on six-dimensional algebras")
    d_rho = L.d(rho)
    d_omega2 = L.d(wedge(omega, omega))
    pair = stable.StablePair(omega, rho)
    report = HalfFlatReport(
        d_rho_zero=d_rho.is_zero(),
        d_omega2_zero=d_omega2.is_zero(),
        compatible=pair.compatible,
        structure=pair.structure,
        norm_c4=pair.norm_c4,
        norm_sign=pair.norm_sign,
        lam=pair.lam,
    )
    if plane is not None and pair.structure.is_stabilizer:
        isotropic, invariant = _plane_checks(pair, plane)
        report.witness_plane_invariant = invariant
        if isotropic and invariant:
            report.isotropic_witness = plane
        else:
            report.detail = (
                f"plane isotropic: {_yn(isotropic)}, J-invariant: {_yn(invariant)}"
            )
    return report


def _plane_checks(pair: stable.StablePair, plane: tuple[KForm, KForm]) -> tuple[bool, bool]:
    """Exact isotropy and J-invariance of a span of two one-forms.

    Isotropy uses alpha ^ J*beta ^ omega^2 = (1/3) g(alpha, beta) omega^3
    scaled by phi(rho), so everything stays in the coefficient field.
    J-invariance checks alpha ^ (v -| rho) ^ rho = 0 for v annihilating the
    plane.
    """
    alpha, beta = plane
    omega2 = wedge(pair.omega, pair.omega)
    isotropic = True
    for a in (alpha, beta):
        for b in (alpha, beta):
            vals = stable.j_matrix_values(pair.rho, b)
            jb = KForm(1, {1 << v: vals[v] for v in range(6)})
            if not scalar_is_zero(volume_ratio(wedge(wedge(a, jb), omega2))):
                isotropic = False
    rows = [[a.coeff(1 << i) for i in range(6)] for a in (alpha, beta)]
    ann = linalg.nullspace(rows)
    invariant = True
    for vec in ann:
        v = Vector(tuple(vec))
        # J* a (v) phi = a ^ (v -| rho) ^ rho must vanish on Ann(plane)
        for a in (alpha, beta):
            if not scalar_is_zero(
                volume_ratio(wedge(wedge(a, contract(v, pair.rho)), pair.rho))
            ):
                invariant = False
    return isotropic, invariant


# -- orthogonal ansatz families -----------------------------------------------

#: type I complex volume form on the product, real and imaginary parts
_PSI0_TYPE_I = form(
    3,
    [("e123", 1), ("e1f23", -1), ("e2f31", -1), ("e3f12", -1)],
)
_PHI0_TYPE_I = form(
    3,
    [("f123", 1), ("e12f3", -1), ("e31f2", -1), ("e23f1", -1)],
)

OMEGA_TYPE_I = form(2, [("e1f1", 1), ("e2f2", 1), ("e3f3", 1)])


def ortho_type_I(
    L1: LieAlgebra, L2: LieAlgebra, xi1: Scalar, xi2: Scalar
) -> tuple[KForm, KForm]:
    """Type I orthogonal ansatz: omega = sum e^i f^i, psi = xi1 psi0 - xi2 phi0.

    Requires both summands unimodular (otherwise d omega^2 != 0 from the
    start) and (xi1, xi2) != (0, 0).  The returned pair is half-flat exactly
    when the structure constants satisfy xi1 c(g1) = xi2 c(g2) slotwise.
    """
    if not (L1.is_unimodular() and L2.is_unimodular()):
        raise DomainError("type I requires unimodular summands")
    xi1, xi2 = Fraction(xi1), Fraction(xi2)
    if xi1 == 0 and xi2 == 0:
        raise DomainError("(xi1, xi2) must be nonzero")
    psi = _PSI0_TYPE_I.scale(xi1) + _PHI0_TYPE_I.scale(-xi2)
    return OMEGA_TYPE_I, psi


def type_I_closure_criterion(L1: LieAlgebra, L2: LieAlgebra, xi1, xi2) -> bool:
    """Slotwise criterion xi1 c_jk^i(g1) = xi2 c_jk^i(g2) for d psi = 0."""
    xi1, xi2 = Fraction(xi1), Fraction(xi2)
    for k in range(1, 4):
        for i in range(1, 4):
            for j in range(i + 1, 4):
                if xi1 * L1.c(i, j, k) != xi2 * L2.c(i, j, k):
                    return False
    return True


@dataclass(frozen=True)
class OrthoAnsatz:
    """Validated parameters of the orthogonal ansatz.

    ``a`` must satisfy -1 < a <= 1 with 1 - a^2 a rational square so that
    b = sqrt(1 - a^2) stays rational; the free structure constants p, q, r
    and xi2 are the case parameters.
    """

    case: str
    a: Fraction
    xi2: Fraction = Fraction(0)
    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        if not Fraction(-1) < self.a <= 1:
            raise DomainError("a must satisfy -1 < a <= 1")
        if not is_square(1 - self.a * self.a):
            raise DomainError("1 - a^2 must be a rational square")

    @property
    def b(self) -> Fraction:
        return rational_sqrt(1 - self.a * self.a)


def ortho_type_II(case: str, **params) -> tuple[LieAlgebra, KForm, KForm]:
    """Fully substituted type II solutions of the orthogonal ansatz.

    Case IIa (0 < |a| < 1, xi2 != 0): free parameters p, q; both summands
    come out unimodular with eigenvalue pattern {0, +-sqrt(p^2+t^2)}.
    Case IIb (0 < |a| < 1, xi2 = 0): free parameters p, q, r.
    Case IIc (a = 1): free parameters p, q, r (= c_13^1), xi2 and s; the
    Jacobi identity demands one of the two derived constants to vanish.
    """
    if case == "IIa":
        return _ortho_iia(**params)
    if case == "IIb":
        return _ortho_iib(**params)
    if case == "IIc":
        return _ortho_iic(**params)
    raise DomainError(f"unknown case {case!r}")


def _omega_type_II(a: Fraction, b: Fraction) -> KForm:
    return form(
        2,
        [("e12", a), ("e1f1", b), ("e2f2", b), ("e3f3", 1), ("f12", -a)],
    )


def _psi0_type_II(a: Fraction, b: Fraction) -> KForm:
    return form(
        3,
        [
            ("f123", b),
            ("e12f3", -b),
            ("e13f2", 1),
            ("e23f1", -1),
            ("e1f13", a),
            ("e2f23", a),
        ],
    )


def _phi0_type_II(a: Fraction, b: Fraction) -> KForm:
    return form(
        3,
        [
            ("e123", -b),
            ("e3f12", b),
            ("e2f13", -1),
            ("e1f23", 1),
            ("e13f1", -a),
            ("e23f2", -a),
        ],
    )


def _ortho_iia(a, xi2, p, q) -> tuple[LieAlgebra, KForm, KForm]:
    ans = OrthoAnsatz("IIa", Fraction(a), xi2=Fraction(xi2), p=Fraction(p), q=Fraction(q))
    if ans.xi2 == 0 or not 0 < abs(ans.a) < 1:
        raise DomainError("case IIa needs xi2 != 0 and 0 < |a| < 1")
    a, b, xi2, p, q = ans.a, ans.b, ans.xi2, ans.p, ans.q
    s = (a * (xi2 * xi2 - 1) * q - (a * a + xi2 * xi2) * p) / (xi2 * (a * a + 1))
    t = -((xi2 * xi2 * a * a + 1) * q + a * (1 - xi2 * xi2) * p) / (xi2 * (a * a + 1))
    g1 = LieAlgebra(
        3,
        [
            form(2, [("e13", p), ("e23", t)]),
            form(2, [("e13", t), ("e23", -p)]),
            form(2),
        ],
        name="iia-g1",
    )
    g2 = LieAlgebra(
        3,
        [
            form(2, [("e13", s), ("e23", q)]),
            form(2, [("e13", q), ("e23", -s)]),
            form(2),
        ],
        name="iia-g2",
    )
    L = direct_sum(g1, g2)
    psi = _psi0_type_II(a, b) + _phi0_type_II(a, b).scale(-xi2)
    return L, _omega_type_II(a, b), psi


def _ortho_iib(a, p, q, r) -> tuple[LieAlgebra, KForm, KForm]:
    ans = OrthoAnsatz("IIb", Fraction(a), p=Fraction(p), q=Fraction(q), r=Fraction(r))
    if not 0 < abs(ans.a) < 1:
        raise DomainError("case IIb needs 0 < |a| < 1")
    a, b, p, q, r = ans.a, ans.b, ans.p, ans.q, ans.r
    g1 = LieAlgebra(
        3,
        [
            form(2, [("e13", r), ("e23", q)]),
            form(2, [("e13", p), ("e23", -r)]),
            form(2, [("e12", q - p)]),
        ],
        name="iib-g1",
    )
    g2 = LieAlgebra(
        3,
        [
            form(2, [("e13", a * q), ("e23", -a * r)]),
            form(2, [("e13", -a * r), ("e23", -a * p)]),
            form(2),
        ],
        name="iib-g2",
    )
    L = direct_sum(g1, g2)
    psi = _psi0_type_II(a, b)
    return L, _omega_type_II(a, b), psi


def _ortho_iic(xi2, p, q, r, s) -> tuple[LieAlgebra, KForm, KForm]:
    """Case a = 1: constants c_13^1 = r, c_13^2 = p, c_46^4 = s, c_56^4 = q."""
    xi2, p, q, r, s = map(Fraction, (xi2, p, q, r, s))
    c231 = -xi2 * q + xi2 * r + s
    c123 = xi2 * r + s - xi2 * q - p
    c465 = -xi2 * p - xi2 * s - r
    c456 = xi2 * s + xi2 * p + q + r
    if not (scalar_is_zero(c456) or scalar_is_zero(c123)):
        raise DomainError("case IIc parameters violate the Jacobi identity")
    g1 = LieAlgebra(
        3,
        [
            form(2, [("e13", r), ("e23", c231)]),
            form(2, [("e13", p), ("e23", c456 - r)]),
            form(2, [("e12", c123)]),
        ],
        name="iic-g1",
        unchecked=True,
    )
    # c_23^2 = a c_45^6 - c_13^1 with a = 1
    g2 = LieAlgebra(
        3,
        [
            form(2, [("e13", s), ("e23", q)]),
            form(2, [("e13", c465), ("e23", c123 - s)]),
            form(2, [("e12", c456)]),
        ],
        name="iic-g2",
        unchecked=True,
    )
    L = direct_sum_unchecked(g1, g2)
    if not L.check_jacobi():
        raise DomainError("case IIc parameters violate the Jacobi identity")
    a, b = Fraction(1), Fraction(0)
    psi = _psi0_type_II(a, b) + _phi0_type_II(a, b).scale(-xi2)
    return L, _omega_type_II(a, b), psi


def direct_sum_unchecked(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    diffs = list(L1.diffs)
    for dk in L2.diffs:
        diffs.append(KForm(2, {m << 3: c for m, c in dk.terms.items()}))
    return LieAlgebra(6, diffs, summands=(L1, L2), unchecked=True)


# -- para-complex construction -------------------------------------------------


def para_eigenspace_pair(
    L1: LieAlgebra, L2: LieAlgebra, omega: KForm
) -> tuple[KForm, KForm, HalfFlatReport]:
    """SL(3,R) pair with rho = e123 + f123 and the summands as eigenspaces.

    ``omega`` must be nondegenerate with zero projections on both
    Lambda^2 g_i*; the result is half-flat exactly when both summands are
    unimodular, which is asserted against the trace criterion.
    """
    for mask in omega.terms:
        lo, hi = mask & 0b111, mask >> 3
        if lo and not hi or hi and not lo:
            raise DomainError("omega must live in g1* x g2*")
    if scalar_is_zero(stable.phi_omega(omega)):
        raise NotStableError("omega is degenerate")
    rho = form(3, [("e123", 1), ("f123", 1)])
    L = direct_sum(L1, L2)
    report = verify(L, omega, rho)
    assert report.structure.kind == stable.KIND_SL3R
    assert report.half_flat == (L1.is_unimodular() and L2.is_unimodular())
    return omega, rho, report
