"""Lie algebras as structure constants with the induced exterior differential.

A Lie algebra of dimension three or six is stored through the differentials
d e^k of its basis covectors; the constants c_ij^k (i < j) are the e^ij
coefficients of d e^k, so antisymmetry is built in and the Jacobi identity
is d^2 = 0.  The module provides the catalog of standard three-dimensional
brackets, direct sums, unimodularity tests, closed-form spaces and basis
changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import exterior, linalg
from .errors import CatalogError, DegreeError, JacobiError
from .exterior import DIM, KForm, Vector, basis_masks, covector, form, wedge
from .scalars import Scalar, scalar_is_zero


class LieAlgebra:
    """Lie algebra given by the differentials of its basis covectors.

    ``diffs[k-1]`` is d e^k as a two-form.  Instances are validated at
    construction (antisymmetry is structural, Jacobi is checked) unless
    ``unchecked=True``, which exists only to represent invalid constants in
    negative tests.
    """

    __slots__ = ("dim", "diffs", "name", "params", "summands", "checked")

    def __init__(
        self,
        dim: int,
        diffs: Sequence[KForm],
        name: str = "",
        params: Mapping[str, Fraction] | None = None,
        summands: tuple["LieAlgebra", "LieAlgebra"] | None = None,
        unchecked: bool = False,
    ):
        if dim not in (3, 6):
            raise ValueError("only dimensions 3 and 6 are supported")
        if len(diffs) != dim:
            raise ValueError("need one differential per basis covector")
        for d in diffs:
            if d.degree != 2:
                raise DegreeError("d of a one-form must be a two-form")
            for mask in d.terms:
                if mask >> dim:
                    raise ValueError("differential uses indices beyond the dimension")
        self.dim = dim
        self.diffs = tuple(diffs)
        self.name = name
        self.params = dict(params or {})
        self.summands = summands
        self.checked = not unchecked
        if self.checked and not self.check_jacobi():
            raise JacobiError(f"structure constants of {name or 'algebra'} violate d^2 = 0")

    # -- structure constants ------------------------------------------------

    def c(self, i: int, j: int, k: int) -> Scalar:
        """Structure constant c_ij^k for i < j."""
        if not i < j:
            raise ValueError("constants are stored for i < j")
        mask = (1 << (i - 1)) | (1 << (j - 1))
        return self.diffs[k - 1].coeff(mask)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        """[u, v], using d a (X, Y) = -a([X, Y])."""
        comps = []
        for k in range(1, self.dim + 1):
            comps.append(-exterior.evaluate(self.diffs[k - 1], [u, v]))
        comps += [Fraction(0)] * (DIM - self.dim)
        return Vector(tuple(comps))

    def ad(self, x: Vector) -> linalg.Matrix:
        """Matrix of ad_x on the basis."""
        cols = [self.bracket(x, Vector.basis(j)) for j in range(1, self.dim + 1)]
        return [[cols[j].components[i] for j in range(self.dim)] for i in range(self.dim)]

    def trace_ad(self) -> list[Scalar]:
        """tr(ad_{e_m}) for each basis vector; zero vector iff unimodular."""
        out = []
        for m in range(1, self.dim + 1):
            t: Scalar = Fraction(0)
            for k in range(1, self.dim + 1):
                if k < m:
                    t = t + self.c(k, m, k)
                elif k > m:
                    t = t - self.c(m, k, k)
            out.append(t)
        return out

    # -- differential --------------------------------------------------------

    def d(self, a: KForm) -> KForm:
        """Exterior differential, the antiderivation extending d on one-forms."""
        if a.degree == DIM:
            return KForm(DIM)  # Lambda^7 = 0, reported as the zero top form
        out = KForm(a.degree + 1)
        for mask, coeff in a.terms.items():
            sign = 1
            for i in range(DIM):
                if mask >> i & 1:
                    if i < self.dim:
                        rest = KForm(a.degree - 1, {mask & ~(1 << i): coeff * sign})
                        out = out + wedge(self.diffs[i], rest)
                    sign = -sign
        return out

    def check_jacobi(self) -> bool:
        """d^2 = 0 on all basis one-forms."""
        return all(self.d(dk).is_zero() for dk in self.diffs)

    # -- predicates ----------------------------------------------------------

    def is_unimodular(self) -> bool:
        """Trace condition: sum_k c_km^k = 0 for every m."""
        return all(scalar_is_zero(t) for t in self.trace_ad())

    def is_unimodular_via_top_minus_one(self) -> bool:
        """Cross-check: all (dim-1)-forms closed."""
        k = self.dim - 1
        return all(
            self.d(KForm(k, {m: Fraction(1)})).is_zero()
            for m in basis_masks(k)
            if not m >> self.dim
        )

    def is_abelian(self) -> bool:
        return all(dk.is_zero() for dk in self.diffs)

    def is_solvable_3d(self) -> bool:
        """For dim 3: solvable iff not simple, detected by d surjectivity onto Lambda^2."""
        if self.dim != 3:
            raise ValueError("only for three-dimensional algebras")
        masks = [m for m in basis_masks(2) if not m >> 3]
        rows = [dk.coefficients(masks) for dk in self.diffs]
        # simple (su(2), sl(2,R)) iff the three d e^k span all of Lambda^2
        return linalg.rank(rows) < 3

    # -- constructions -------------------------------------------------------

    def closed_forms(self, k: int) -> "Subspace":
        """Kernel of d on Lambda^k, by exact elimination."""
        masks = [m for m in basis_masks(k) if not m >> self.dim]
        out_masks = [m for m in basis_masks(k + 1) if not m >> self.dim] if k < self.dim else []
        rows: list[list[Scalar]] = []
        images = [self.d(KForm(k, {m: Fraction(1)})) for m in masks]
        for om in out_masks:
            rows.append([img.coeff(om) for img in images])
        if not rows:
            basis = [KForm(k, {m: Fraction(1)}) for m in masks]
            return Subspace(k, basis)
        ker = linalg.nullspace(rows)
        basis = [
            KForm(k, {m: c for m, c in zip(masks, vec)})
            for vec in ker
        ]
        return Subspace(k, basis)


@dataclass
class Subspace:
    """Subspace of Lambda^k spanned by an independent list of forms."""

    degree: int
    basis: list[KForm] = field(default_factory=list)

    def __post_init__(self):
        masks = basis_masks(self.degree)
        rows = [b.coefficients(masks) for b in self.basis]
        if rows and linalg.rank(rows) != len(rows):
            raise ValueError("subspace basis is linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, a: KForm) -> bool:
        if a.degree != self.degree:
            return False
        masks = basis_masks(self.degree)
        rows = linalg.transpose([b.coefficients(masks) for b in self.basis])
        return linalg.solve(rows, a.coefficients(masks)) is not None


def d(L: LieAlgebra, a: KForm) -> KForm:
    return L.d(a)


def check_jacobi(L: LieAlgebra) -> bool:
    return L.check_jacobi()


def is_unimodular(L: LieAlgebra) -> bool:
    return L.is_unimodular()


def closed_forms(L: LieAlgebra, k: int) -> Subspace:
    return L.closed_forms(k)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    """Direct sum with basis order e1,e2,e3,f1,f2,f3 and no cross terms."""
    if L1.dim != 3 or L2.dim != 3:
        raise ValueError("direct sums are formed from three-dimensional algebras")
    diffs = list(L1.diffs)
    for dk in L2.diffs:
        shifted: dict[int, Scalar] = {}
        for mask, coeff in dk.terms.items():
            shifted[mask << 3] = coeff
        diffs.append(KForm(2, shifted))
    params = {**{f"{k}1": v for k, v in L1.params.items()},
              **{f"{k}2": v for k, v in L2.params.items()}}
    out = LieAlgebra(
        6,
        diffs,
        name=f"{L1.name}+{L2.name}" if L1.name and L2.name else "",
        params=params,
        summands=(L1, L2),
    )
    assert out.is_unimodular() == (L1.is_unimodular() and L2.is_unimodular())
    return out


def change_basis(L: LieAlgebra, b_cols: Sequence[Sequence[Scalar]]) -> LieAlgebra:
    """Algebra expressed in the new basis b_j = sum_i b_cols[i][j] e_i.

    ``b_cols`` is the invertible matrix whose columns are the new basis
    vectors in old coordinates.
    """
    n = L.dim
    binv = linalg.invert([list(r) for r in b_cols])
    if binv is None:
        raise ValueError("basis change matrix is singular")
    new_basis = [
        Vector(tuple(list(col) + [Fraction(0)] * (DIM - n)))
        for col in linalg.transpose(b_cols)
    ]
    diffs = []
    for k in range(n):
        # new constants: c'_ij^k = -(new e^k)([b_i, b_j])
        terms: dict[int, Scalar] = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                br = L.bracket(new_basis[i - 1], new_basis[j - 1])
                # components of the bracket in the new basis
                old = list(br.components[:n])
                newc = linalg.mat_vec(binv, old)
                val = -newc[k]
                if not scalar_is_zero(val):
                    terms[(1 << (i - 1)) | (1 << (j - 1))] = val
        diffs.append(KForm(2, terms))
    return LieAlgebra(n, diffs, name=L.name, params=L.params)


# -- catalog of standard three-dimensional brackets ---------------------------

_STANDARD: dict[str, dict[str, list[tuple[str, int]]]] = {
    "su2": {"e1": [("e23", 1)], "e2": [("e31", 1)], "e3": [("e12", 1)]},
    "sl2": {"e1": [("e23", 1)], "e2": [("e31", 1)], "e3": [("e21", 1)]},
    "e2": {"e2": [("e31", 1)], "e3": [("e12", 1)]},
    "e11": {"e2": [("e31", 1)], "e3": [("e21", 1)]},
    "h3": {"e3": [("e12", 1)]},
    "R3": {},
    "r2R": {"e2": [("e21", 1)]},
    "r3": {"e2": [("e21", 1), ("e31", 1)], "e3": [("e31", 1)]},
    "r31": {"e2": [("e21", 1)], "e3": [("e31", 1)]},
}

#: display name, Bianchi type and unimodularity per catalog tag
CATALOG_INFO: dict[str, tuple[str, str, bool]] = {
    "su2": ("su(2)", "IX", True),
    "sl2": ("sl(2,R)", "VIII", True),
    "e2": ("e(2)", "VII_0", True),
    "e11": ("e(1,1)", "VI_0", True),
    "h3": ("h3", "II", True),
    "R3": ("R^3", "I", True),
    "r2R": ("r2+R", "III", False),
    "r3": ("r3", "IV", False),
    "r31": ("r3,1", "V", False),
    "r3mu": ("r3,mu", "VI", False),
    "r3pmu": ("r3',mu", "VII", False),
}

CATALOG_NAMES = tuple(CATALOG_INFO)


def catalog(name: str, mu: Fraction | int | str | None = None) -> LieAlgebra:
    """Standard bracket of the named class, exactly as tabulated.

    Parameterized families require a rational mu inside the legal range:
    r3mu needs -1 < mu < 0 or 0 < mu <= 1 (mu = 1 coincides with r3,1) and
    r3pmu needs mu > 0.
    """
    if name in _STANDARD:
        if mu is not None:
            raise CatalogError(f"{name} takes no parameter")
        table = _STANDARD[name]
        diffs = [form(2, table.get(f"e{k}", [])) for k in (1, 2, 3)]
        return LieAlgebra(3, diffs, name=name)
    if name == "r3mu":
        m = _check_mu(name, mu)
        if not (Fraction(-1) < m < 0 or 0 < m <= 1):
            raise CatalogError("r3mu requires -1 < mu < 0 or 0 < mu <= 1")
        diffs = [form(2), form(2, [("e21", 1)]), form(2, [("e31", m)])]
        return LieAlgebra(3, diffs, name=name, params={"mu": m})
    if name == "r3pmu":
        m = _check_mu(name, mu)
        if not m > 0:
            raise CatalogError("r3pmu requires mu > 0")
        diffs = [
            form(2),
            form(2, [("e21", m), ("e13", 1)]),
            form(2, [("e21", 1), ("e31", m)]),
        ]
        return LieAlgebra(3, diffs, name=name, params={"mu": m})
    raise CatalogError(f"unknown catalog name {name!r}")


def _check_mu(name: str, mu) -> Fraction:
    if mu is None:
        raise CatalogError(f"{name} requires a rational parameter mu")
    return Fraction(mu)


#: default rational sample set for parameterized families
MU_SAMPLES = tuple(
    Fraction(p, q) for p, q in [(-3, 4), (-1, 2), (-1, 4), (1, 4), (1, 2), (3, 4), (1, 1), (2, 1)]
)


@dataclass(frozen=True)
class ClassSpec:
    """One of the twelve isomorphism classes, with its mu sample points.

    The two continuously parameterized Bianchi types count as three classes:
    r3mu with mu < 0, r3mu with 0 < mu < 1, and r3pmu.  mu = 1 is the
    separate class r3,1.
    """

    key: str
    family: str
    mu_samples: tuple[Fraction, ...]

    def instances(self) -> list[LieAlgebra]:
        if not self.mu_samples:
            return [catalog(self.family)]
        return [catalog(self.family, m) for m in self.mu_samples]


def catalog_classes() -> list[ClassSpec]:
    """The twelve classes underlying the 78 direct-sum classes."""
    legal = lambda lo, hi: tuple(m for m in MU_SAMPLES if lo < m < hi)
    return [
        ClassSpec("su2", "su2", ()),
        ClassSpec("sl2", "sl2", ()),
        ClassSpec("e2", "e2", ()),
        ClassSpec("e11", "e11", ()),
        ClassSpec("h3", "h3", ()),
        ClassSpec("R3", "R3", ()),
        ClassSpec("r2R", "r2R", ()),
        ClassSpec("r3", "r3", ()),
        ClassSpec("r31", "r31", ()),
        ClassSpec("r3mu-", "r3mu", legal(Fraction(-1), Fraction(0))),
        ClassSpec("r3mu+", "r3mu", legal(Fraction(0), Fraction(1))),
        ClassSpec("r3pmu", "r3pmu", tuple(m for m in MU_SAMPLES if m > 0)),
    ]
