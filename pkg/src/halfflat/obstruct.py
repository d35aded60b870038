"""Non-existence machinery for half-flat structures on direct sums.

The core obstruction: if g* = V (+) W with dim V = 2 is a coherent
splitting (dV in Lambda^2 V, dW in Lambda^2 V (+) V^W) and every closed
three-form has zero Lambda^3 W component while every closed four-form has
zero Lambda^4 W component, then V is isotropic and J-invariant for every
half-flat pair, which rules out a definite metric.  On direct sums the
splittings come from factor one-forms alpha_i with im(d|g_i*) in
alpha_i ^ g_i*, and the two component conditions reduce to d being
injective on Lambda^3 W and Lambda^4 W.

Two algebras resist the direct rank argument and get refined checks:
h3 (+) r2R through the isotropy of f^1 against every closed (rho, sigma),
and r2R (+) R^3 through K_rho(e_2) being proportional to e_2 for every
closed rho, which forces lambda(rho) >= 0 and rules out every SU(p,q).
A seeded random scan certifies lambda >= 0 on sampled closed three-forms
for the nine class pairs where that argument applies; the scan falsifies,
it does not prove.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import HalfFlatError
from .exterior import DIM, KForm, Vector, basis_masks, contract, covector, form, wedge, wedge_all
from .liealg import LieAlgebra, catalog
from .scalars import Scalar, scalar_is_zero

VERDICT_OBSTRUCTED = "NoHalfFlatSU3"
VERDICT_INCONCLUSIVE = "Inconclusive"


@dataclass
class ObstructionReport:
    """Outcome of the splitting obstruction for one decomposition."""

    v_basis: tuple[KForm, KForm]
    w_basis: list[KForm]
    coherent: bool
    h03: bool
    h04: bool
    rank_d_lambda3_w: int
    rank_d_lambda4_w: int
    verdict: str
    detail: str = ""

    def to_text(self) -> str:
        lines = [
            f"verdict: {self.verdict}",
            f"coherent: {str(self.coherent).lower()}",
            f"h03: {str(self.h03).lower()}",
            f"h04: {str(self.h04).lower()}",
            f"rank_d_lambda3W: {self.rank_d_lambda3_w}",
            f"rank_d_lambda4W: {self.rank_d_lambda4_w}",
        ]
        if self.detail:
            lines.append(f"detail: {self.detail}")
        return "\n".join(lines)


def factor_alpha_candidates(L3: LieAlgebra) -> list[KForm]:
    """Closed one-forms alpha with im(d) contained in alpha ^ g*.

    Simple factors admit none; non-abelian solvable factors admit e^1 from
    the standard basis (unique projectively for most classes); for abelian
    factors every one-form qualifies and a small projective grid is
    returned.
    """
    if L3.dim != 3:
        raise ValueError("factor candidates are for three-dimensional algebras")
    if L3.is_abelian():
        grid = []
        coeffs = (Fraction(0), Fraction(1), Fraction(-1))
        for c1 in (Fraction(1),):
            for c2 in coeffs:
                for c3 in coeffs:
                    grid.append(KForm(1, {1: c1, 2: c2, 4: c3}))
        grid += [covector(2), covector(3), covector(2) + covector(3), covector(2) - covector(3)]
        return grid
    out = []
    for alpha in (covector(1), covector(2), covector(3)):
        if _alpha_works(L3, alpha):
            out.append(alpha)
    return out


def _alpha_works(L3: LieAlgebra, alpha: KForm) -> bool:
    if not L3.d(alpha).is_zero():
        return False
    # beta in alpha ^ g*  <=>  beta ^ alpha = 0 (two-forms on a 3-space)
    return all(wedge(L3.d(covector(k)), alpha).is_zero() for k in (1, 2, 3))


def coherent_splittings(L: LieAlgebra) -> list[tuple[KForm, KForm]]:
    """Factor-wise coherent splittings V = span(alpha1, alpha2) of a direct sum.

    Nonempty exactly when both summands are solvable.
    """
    if L.summands is None:
        raise HalfFlatError("coherent splittings need the direct-sum structure")
    L1, L2 = L.summands
    out = []
    for a1 in factor_alpha_candidates(L1):
        for a2 in factor_alpha_candidates(L2):
            shifted = KForm(1, {m << 3: c for m, c in a2.terms.items()})
            pair = (a1, shifted)
            if is_coherent(L, pair):
                out.append(pair)
    return out


def is_coherent(L: LieAlgebra, v_pair: tuple[KForm, KForm]) -> bool:
    """Exact coherence of the splitting spanned by two one-forms.

    dV in Lambda^2 V and dW in Lambda^2 V (+) V ^ W, checked on an adapted
    basis; for V = span(alpha1, alpha2) this is closedness of the alphas
    plus d e^k ^ alpha1 ^ alpha2 = 0 for every generator.
    """
    a1, a2 = v_pair
    if not (L.d(a1).is_zero() and L.d(a2).is_zero()):
        return False
    vv = wedge(a1, a2)
    if vv.is_zero():
        return False
    return all(wedge(L.d(covector(k)), vv).is_zero() for k in range(1, DIM + 1))


def _complete_to_basis(v_pair: tuple[KForm, KForm]) -> list[KForm]:
    """Standard coframe elements completing span(v_pair) to a basis."""
    rows = [[a.coeff(1 << i) for i in range(DIM)] for a in v_pair]
    _, pivots = linalg.rref(rows)
    return [covector(i + 1) for i in range(DIM) if i not in pivots]


def _adapted_components(forms_in: list[KForm], coframe: list[KForm]) -> list[list[Scalar]]:
    """Coefficients of k-forms in the wedge basis of the given coframe."""
    if not forms_in:
        return []
    k = forms_in[0].degree
    c_mat = [[c.coeff(1 << i) for i in range(DIM)] for c in coframe]
    inv = linalg.invert(c_mat)
    if inv is None:
        raise HalfFlatError("coframe is not a basis")
    duals = [Vector(tuple(col)) for col in linalg.transpose(inv)]
    out = []
    for f in forms_in:
        from .exterior import evaluate

        coeffs = []
        for subset in combinations(range(DIM), k):
            coeffs.append(evaluate(f, [duals[i] for i in subset]))
        out.append(coeffs)
    return out


def check_obstruction(L: LieAlgebra, v_pair: tuple[KForm, KForm]) -> ObstructionReport:
    """Evaluate the splitting obstruction for V = span(v_pair).

    Computes both the component conditions on Z^3 and Z^4 directly and the
    equivalent injectivity ranks of d on Lambda^3 W and Lambda^4 W; the two
    routes are asserted to agree.
    """
    if not is_coherent(L, v_pair):
        raise HalfFlatError("splitting is not coherent")
    w_basis = _complete_to_basis(v_pair)
    coframe = list(v_pair) + w_basis

    # rank route: d restricted to Lambda^3 W and Lambda^4 W
    w3 = [wedge_all(list(t)) for t in combinations(w_basis, 3)]
    w4 = [wedge_all(list(t)) for t in combinations(w_basis, 4)]
    rank3 = _rank_of_images(L, w3, 4)
    rank4 = _rank_of_images(L, w4, 5)

    # direct route: closed forms must have zero pure-W components
    h03 = _zero_pure_w_components(L, 3, coframe)
    h04 = _zero_pure_w_components(L, 4, coframe)
    assert h03 == (rank3 == len(w3)) and h04 == (rank4 == len(w4))

    verdict = VERDICT_OBSTRUCTED if (h03 and h04) else VERDICT_INCONCLUSIVE
    return ObstructionReport(
        v_basis=v_pair,
        w_basis=w_basis,
        coherent=True,
        h03=h03,
        h04=h04,
        rank_d_lambda3_w=rank3,
        rank_d_lambda4_w=rank4,
        verdict=verdict,
    )


def _rank_of_images(L: LieAlgebra, forms_in: list[KForm], out_degree: int) -> int:
    masks = basis_masks(out_degree)
    rows = [L.d(f).coefficients(masks) for f in forms_in]
    return linalg.rank(rows)


def _zero_pure_w_components(L: LieAlgebra, degree: int, coframe: list[KForm]) -> bool:
    closed = L.closed_forms(degree).basis
    comps = _adapted_components(closed, coframe)
    # pure-W subsets avoid the first two coframe slots
    subsets = list(combinations(range(DIM), degree))
    pure_w = [i for i, s in enumerate(subsets) if 0 not in s and 1 not in s]
    return all(scalar_is_zero(row[i]) for row in comps for i in pure_w)


# -- refined arguments ----------------------------------------------------------


def _is_standard(L: LieAlgebra, names: tuple[str, str]) -> bool:
    if L.summands is None:
        return False
    want = [catalog(n) for n in names]
    return all(s.diffs == w.diffs for s, w in zip(L.summands, want))


def refined_h3_r2R(L: LieAlgebra, enforce: bool = True) -> bool:
    """Isotropy obstruction specific to h3 (+) r2R.

    Returns True when (1) f^1 ^ sigma lies in span{f^1 e^12 f^23,
    f^1 e^123 f^3} for every closed four-form sigma and (2) the polarized
    quadratic map f^1 ^ (v -| rho1) ^ rho2 + f^1 ^ (v -| rho2) ^ rho1
    vanishes on Z^3 x Z^3 for v in {e_3, f_2}.  Together those force f^1 to
    be isotropic for every half-flat pair, so no half-flat SU(3) exists.
    """
    if enforce and not _is_standard(L, ("h3", "r2R")):
        raise HalfFlatError("refined check expects h3 (+) r2R in the standard basis")
    f1 = covector(4)
    span_masks = _span_masks([("f1e12f23"), ("f1e123f3")])
    for sigma in L.closed_forms(4).basis:
        prod = wedge(f1, sigma)
        if any(m not in span_masks for m in prod.terms):
            return False
    z3 = L.closed_forms(3).basis
    for v in (Vector.basis(3), Vector.basis(5)):
        for i in range(len(z3)):
            for j in range(i, len(z3)):
                s = wedge(wedge(f1, contract(v, z3[i])), z3[j]) + wedge(
                    wedge(f1, contract(v, z3[j])), z3[i]
                )
                if not s.is_zero():
                    return False
    return True


def _span_masks(specs: list[str]) -> set[int]:
    from .exterior import mono

    return {mono(s)[0] for s in specs}


def refined_r2R_R3(L: LieAlgebra, enforce: bool = True) -> bool:
    """K_rho(e_2) proportional to e_2 for every closed rho on r2R (+) R^3.

    Verified on a basis of Z^3 and on all pairwise sums, which polarizes
    the quadratic map completely; together with dim Z^1 = 5 this forces
    lambda(rho) = c^2 >= 0 for every closed rho, so no SU(p,q) structure of
    any signature exists.
    """
    from .exterior import kappa

    if enforce and not _is_standard(L, ("r2R", "R3")):
        raise HalfFlatError("refined check expects r2R (+) R^3 in the standard basis")
    if enforce and L.closed_forms(1).dim != 5:
        return False
    z3 = L.closed_forms(3).basis

    def k_e2_off_axis(rho: KForm) -> bool:
        xi = wedge(contract(Vector.basis(2), rho), rho)
        x, _ = kappa(xi)
        return all(scalar_is_zero(x.components[i]) for i in range(6) if i != 1)

    for i in range(len(z3)):
        for j in range(i, len(z3)):
            if not k_e2_off_axis(z3[i] + z3[j]):
                return False
        if not k_e2_off_axis(z3[i]):
            return False
    return True


# -- randomized certificates -----------------------------------------------------


@dataclass
class ScanReport:
    """Outcome of a seeded random lambda-sign scan; falsification, not proof."""

    algebra: str
    n_samples: int
    seed: int
    all_nonnegative: bool
    first_negative: int | None = None
    note: str = "randomized falsification scan, not a proof"

    def to_text(self) -> str:
        lines = [
            f"algebra: {self.algebra}",
            f"samples: {self.n_samples}",
            f"seed: {self.seed}",
            f"lambda_nonnegative: {str(self.all_nonnegative).lower()}",
        ]
        if self.first_negative is not None:
            lines.append(f"first_negative_sample: {self.first_negative}")
        lines.append(f"note: {self.note}")
        return "\n".join(lines)


def lambda_nonneg_scan(L: LieAlgebra, n_samples: int, seed: int) -> ScanReport:
    """Draw seeded random rational closed three-forms and test lambda >= 0.

    Coefficients are drawn from [-10, 10] rational with denominator <= 4;
    each draw is cleared to an integer form before the exact lambda sign is
    taken (lambda scales by a fourth power, so the sign is unaffected).
    """
    rng = random.Random(seed)
    basis = L.closed_forms(3).basis
    masks = basis_masks(3)
    basis_rows = [[b.coeff(m) for m in masks] for b in basis]
    all_nonneg = True
    first_neg = None
    for sample in range(n_samples):
        coeffs = [
            Fraction(rng.randint(-10 * 4, 10 * 4), 4) for _ in range(len(basis))
        ]
        row = [
            sum((c * br[k] for c, br in zip(coeffs, basis_rows)), Fraction(0))
            for k in range(len(masks))
        ]
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        lam6 = _lambda_six_int({m: c for m, c in zip(masks, ints) if c})
        if lam6 < 0:
            all_nonneg = False
            first_neg = sample
            break
    return ScanReport(
        algebra=L.name or "direct sum",
        n_samples=n_samples,
        seed=seed,
        all_nonnegative=all_nonneg,
        first_negative=first_neg,
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _lambda_six_int(terms: dict[int, int]) -> int:
    """6 * lambda for an integer-coefficient three-form, in pure integers."""
    from .exterior import _SIGN

    nu_mask = (1 << DIM) - 1
    k = [[0] * DIM for _ in range(DIM)]
    for j in range(DIM):
        bit_j = 1 << j
        # (e_{j+1} -| rho) with sign bookkeeping
        contracted: dict[int, int] = {}
        for mask, c in terms.items():
            if mask & bit_j:
                below = bin(mask & (bit_j - 1)).count("1")
                s = -c if below & 1 else c
                contracted[mask & ~bit_j] = contracted.get(mask & ~bit_j, 0) + s
        # wedge with rho, then kappa
        for m2, c2 in contracted.items():
            for m3, c3 in terms.items():
                if m2 & m3:
                    continue
                prod = c2 * c3 * _SIGN[(m2, m3)]
                missing = nu_mask & ~(m2 | m3)
                u = missing.bit_length() - 1
                val = -prod if u & 1 else prod
                k[u][j] += val
    tr = 0
    for i in range(DIM):
        for j in range(DIM):
            tr += k[i][j] * k[j][i]
    return tr


def unimodular_no_splitting(L: LieAlgebra, k: int = 50, seed: int = 0) -> bool:
    """Randomized confirmation that no splitting satisfies both conditions.

    For k random decompositions g* = V (+) W exhibit a closed three-form
    with nonzero Lambda^3 W component or a closed four-form with nonzero
    Lambda^4 W component.  True when every sampled decomposition is
    defeated; intended for unimodular sums.
    """
    rng = random.Random(seed)
    z3 = L.closed_forms(3).basis
    z4 = L.closed_forms(4).basis
    defeated = 0
    trials = 0
    while defeated < k and trials < 20 * k:
        trials += 1
        coframe = _random_coframe(rng)
        if coframe is None:
            continue
        comp3 = _adapted_components(z3, coframe)
        subsets3 = list(combinations(range(DIM), 3))
        pure3 = [i for i, s in enumerate(subsets3) if 0 not in s and 1 not in s]
        if any(not scalar_is_zero(row[i]) for row in comp3 for i in pure3):
            defeated += 1
            continue
        comp4 = _adapted_components(z4, coframe)
        subsets4 = list(combinations(range(DIM), 4))
        pure4 = [i for i, s in enumerate(subsets4) if 0 not in s and 1 not in s]
        if any(not scalar_is_zero(row[i]) for row in comp4 for i in pure4):
            defeated += 1
            continue
        return False  # a surviving decomposition: obstruction applies
    return defeated >= k


def _random_coframe(rng: random.Random) -> list[KForm] | None:
    rows = [
        [Fraction(rng.randint(-3, 3)) for _ in range(DIM)] for _ in range(DIM)
    ]
    if linalg.det(rows) == 0:
        return None
    return [KForm(1, {1 << i: r[i] for i in range(DIM)}) for r in rows]
