"""Exact Bianchi/Milnor classification of three-dimensional Lie algebras.

Unimodular algebras are classified by the sign pattern of the self-adjoint
endomorphism L with [u, v] = L(u x v), computed as an exact inertia, with
the orientation flipped when needed so at most one eigenvalue is negative.
Non-unimodular algebras are classified by the determinant D of the
restriction of ad_X to the two-dimensional abelian unimodular kernel,
where tr(ad_X) = 2, together with the special case where that restriction
is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import HalfFlatError
from .exterior import Vector
from .liealg import CATALOG_INFO, LieAlgebra
from .scalars import Scalar, is_square, rational_sqrt, scalar_is_zero

#: sign pattern (n_pos, n_neg) of L -> unimodular class tag
_UNIMODULAR_BY_SIGNS = {
    (3, 0): "su2",
    (2, 1): "sl2",
    (2, 0): "e2",
    (1, 1): "e11",
    (1, 0): "h3",
    (0, 0): "R3",
}


@dataclass(frozen=True)
class BianchiClass:
    """Classification result: catalog tag, Bianchi numeral and the invariant."""

    name: str
    bianchi: str
    eigen_signs: tuple[int, int, int] | None = None
    det_d: Scalar | None = None
    mu: Fraction | None = None
    ltilde_identity: bool | None = None

    @property
    def display(self) -> str:
        return CATALOG_INFO[self.name][0]


def milnor_L(L3: LieAlgebra, orientation: int = 1) -> linalg.Matrix:
    """The unique matrix with [u, v] = L(u x v) in the declared basis.

    The basis is treated as orthonormal; ``orientation=+1`` uses the cross
    product with e1 x e2 = e3, ``orientation=-1`` the reversed one.  L is
    symmetric exactly when the algebra is unimodular.
    """
    if L3.dim != 3:
        raise ValueError("Milnor endomorphism is defined for dimension three")
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    cols = [
        L3.bracket(Vector.basis(2), Vector.basis(3)),  # L(e1) = [e2, e3]
        L3.bracket(Vector.basis(3), Vector.basis(1)),  # L(e2) = [e3, e1]
        L3.bracket(Vector.basis(1), Vector.basis(2)),  # L(e3) = [e1, e2]
    ]
    m = [[orientation * cols[j].components[i] for j in range(3)] for i in range(3)]
    assert linalg.is_symmetric(m) == L3.is_unimodular()
    return m


def classify(L3: LieAlgebra) -> BianchiClass:
    """Exact isomorphism class of a valid three-dimensional Lie algebra."""
    if L3.dim != 3:
        raise ValueError("classification is for three-dimensional algebras")
    if not L3.check_jacobi():
        raise HalfFlatError("input violates the Jacobi identity")
    if L3.is_unimodular():
        return _classify_unimodular(L3)
    return _classify_non_unimodular(L3)


def _classify_unimodular(L3: LieAlgebra) -> BianchiClass:
    m = milnor_L(L3)
    pos, neg, zero = linalg.inertia(m)
    if neg > pos:  # flip the orientation so at most one eigenvalue is negative
        pos, neg = neg, pos
    signs = tuple([1] * pos + [-1] * neg + [0] * zero)
    name = _UNIMODULAR_BY_SIGNS[(pos, neg)]
    return BianchiClass(name=name, bianchi=CATALOG_INFO[name][1], eigen_signs=signs)


def _classify_non_unimodular(L3: LieAlgebra) -> BianchiClass:
    tau = L3.trace_ad()
    norm2 = sum((t * t for t in tau), Fraction(0))
    x = Vector(tuple([2 * t / norm2 for t in tau] + [Fraction(0)] * 3))
    kernel = linalg.nullspace([tau])
    if len(kernel) != 2:
        raise HalfFlatError("unimodular kernel is not two-dimensional")
    u1 = Vector(tuple(list(kernel[0]) + [Fraction(0)] * 3))
    u2 = Vector(tuple(list(kernel[1]) + [Fraction(0)] * 3))
    if not L3.bracket(u1, u2).is_zero():
        raise HalfFlatError("unimodular kernel is not abelian")
    ltilde = _restrict_ad(L3, x, (kernel[0], kernel[1]))
    d = linalg.det(ltilde)
    is_id = linalg.mat_eq(ltilde, linalg.identity(2))
    if scalar_is_zero(d):
        name = "r2R"
    elif d == 1:
        name = "r31" if is_id else "r3"
    elif d < 1:
        name = "r3mu"
    else:
        name = "r3pmu"
    return BianchiClass(
        name=name,
        bianchi=CATALOG_INFO[name][1],
        det_d=d,
        mu=_recover_mu(name, d),
        ltilde_identity=is_id,
    )


def _restrict_ad(L3: LieAlgebra, x: Vector, kernel_basis) -> linalg.Matrix:
    cols = []
    basis_mat = linalg.transpose([list(k) for k in kernel_basis])
    for k in kernel_basis:
        img = L3.bracket(x, Vector(tuple(list(k) + [Fraction(0)] * 3)))
        coeffs = linalg.solve(basis_mat, list(img.components[:3]))
        if coeffs is None:
            raise HalfFlatError("unimodular kernel is not ad_X invariant")
        cols.append(coeffs)
    return linalg.transpose(cols)


def _recover_mu(name: str, d: Scalar) -> Fraction | None:
    """Invert D on the monotone branches, when the root is rational.

    D = 4 mu / (mu+1)^2 for r3mu and D = 1 + 1/mu^2 for r3pmu.
    """
    if name == "r31":
        return Fraction(1)
    if name == "r3mu":
        disc = 1 - d
        if not is_square(disc):
            return None
        return (2 - d - 2 * rational_sqrt(disc)) / d
    if name == "r3pmu":
        inv = 1 / (d - 1)
        if not is_square(inv):
            return None
        return rational_sqrt(inv)
    return None
