from __future__ import annotations

import random
from fractions import Fraction

import pytest

from halfflat import obstruct
from halfflat.errors import HalfFlatError
from halfflat.exterior import KForm, basis_masks, covector, wedge, volume_ratio, contract, Vector
from halfflat.liealg import catalog, direct_sum
from halfflat.stable import lambda_of

V_STD = None


def _v_std():
    return (covector(1), covector(4))


def test_factor_candidates():
    assert obstruct.factor_alpha_candidates(catalog("su2")) == []
    assert obstruct.factor_alpha_candidates(catalog("sl2")) == []
    r2R = obstruct.factor_alpha_candidates(catalog("r2R"))
    assert covector(1) in r2R and len(r2R) == 1
    r3mu = obstruct.factor_alpha_candidates(catalog("r3mu", Fraction(1, 2)))
    assert covector(1) in r3mu
    h3 = obstruct.factor_alpha_candidates(catalog("h3"))
    assert covector(1) in h3 and covector(2) in h3  # projective family
    assert len(obstruct.factor_alpha_candidates(catalog("R3"))) > 5


def test_coherent_splittings_iff_solvable():
    solvable = ("e2", "e11", "h3", "R3", "r2R", "r3", "r31")
    for n1 in solvable:
        for n2 in ("su2", "sl2"):
            L = direct_sum(catalog(n1), catalog(n2))
            assert obstruct.coherent_splittings(L) == []
    L = direct_sum(catalog("h3"), catalog("r3"))
    assert len(obstruct.coherent_splittings(L)) >= 1


def test_check_obstruction_ranks_r2R_r2R():
    L = direct_sum(catalog("r2R"), catalog("r2R"))
    rep = obstruct.check_obstruction(L, _v_std())
    assert rep.verdict == obstruct.VERDICT_OBSTRUCTED
    assert rep.rank_d_lambda3_w == 4 and rep.rank_d_lambda4_w == 1


def test_check_obstruction_solvable_with_r3_family():
    g2s = [("r3", None)] + [("r3mu", m) for m in (Fraction(-1, 2), Fraction(1, 2), 1)] + [
        ("r3pmu", 2)
    ]
    for g1 in ("e2", "e11", "h3", "R3", "r2R", "r3"):
        for name, mu in g2s:
            L = direct_sum(catalog(g1), catalog(name, mu))
            rep = obstruct.check_obstruction(L, _v_std())
            assert rep.verdict == obstruct.VERDICT_OBSTRUCTED, (g1, name, mu)
            assert rep.rank_d_lambda3_w == 4 and rep.rank_d_lambda4_w == 1


def test_check_obstruction_inconclusive_on_h3_r2R():
    L = direct_sum(catalog("h3"), catalog("r2R"))
    rep = obstruct.check_obstruction(L, _v_std())
    assert rep.verdict == obstruct.VERDICT_INCONCLUSIVE
    assert not rep.h03


def test_check_obstruction_requires_coherent():
    L = direct_sum(catalog("su2"), catalog("r3"))
    with pytest.raises(HalfFlatError):
        obstruct.check_obstruction(L, _v_std())


def test_refined_h3_r2R():
    L = direct_sum(catalog("h3"), catalog("r2R"))
    assert obstruct.refined_h3_r2R(L)
    control = direct_sum(catalog("su2"), catalog("su2"))
    assert not obstruct.refined_h3_r2R(control, enforce=False)
    with pytest.raises(HalfFlatError):
        obstruct.refined_h3_r2R(control)


def test_refined_h3_r2R_polarization_consistency(rng):
    # quadratic form vanishes on Z^3 iff the polarized form vanishes on Z^3 x Z^3
    L = direct_sum(catalog("h3"), catalog("r2R"))
    z3 = L.closed_forms(3).basis
    f1 = covector(4)
    for _ in range(40):
        coeffs = [Fraction(rng.randint(-6, 6)) for _ in z3]
        rho = KForm(3)
        for c, b in zip(coeffs, z3):
            rho = rho + b.scale(c)
        for v in (Vector.basis(3), Vector.basis(5)):
            quad = wedge(wedge(f1, contract(v, rho)), rho)
            assert quad.is_zero()


def test_refined_r2R_R3():
    L = direct_sum(catalog("r2R"), catalog("R3"))
    assert obstruct.refined_r2R_R3(L)
    assert L.closed_forms(1).dim == 5
    flat = direct_sum(catalog("R3"), catalog("R3"))
    assert not obstruct.refined_r2R_R3(flat, enforce=False)


def test_refined_r2R_R3_implies_lambda_nonneg(rng):
    L = direct_sum(catalog("r2R"), catalog("R3"))
    z3 = L.closed_forms(3).basis
    for _ in range(50):
        rho = KForm(3)
        for b in z3:
            rho = rho + b.scale(Fraction(rng.randint(-5, 5)))
        assert lambda_of(rho) >= 0


def test_lambda_scan_nonnegative_classes():
    L = direct_sum(catalog("h3"), catalog("r3mu", Fraction(1, 2)))
    rep = obstruct.lambda_nonneg_scan(L, 300, seed=7)
    assert rep.all_nonnegative
    L2 = direct_sum(catalog("r2R"), catalog("r3pmu", 2))
    rep2 = obstruct.lambda_nonneg_scan(L2, 300, seed=7)
    assert rep2.all_nonnegative
    assert "not a proof" in rep2.to_text()


def test_lambda_scan_control_finds_negative():
    L = direct_sum(catalog("su2"), catalog("su2"))
    rep = obstruct.lambda_nonneg_scan(L, 1000, seed=7)
    assert not rep.all_nonnegative
    assert rep.first_negative is not None and rep.first_negative < 100


def test_lambda_scan_matches_exact_path():
    # the integer fast path must agree in sign with the exact KForm pipeline
    rng = random.Random(5)
    L = direct_sum(catalog("e11"), catalog("r3"))
    z3 = L.closed_forms(3).basis
    masks = basis_masks(3)
    for _ in range(30):
        rho = KForm(3)
        for b in z3:
            rho = rho + b.scale(Fraction(rng.randint(-8, 8)))
        ints = {m: int(rho.coeff(m)) for m in masks if rho.coeff(m) != 0}
        lam6 = obstruct._lambda_six_int(ints)
        exact = lambda_of(rho)
        assert (lam6 > 0) == (exact > 0) and (lam6 < 0) == (exact < 0)
        assert Fraction(lam6, 6) == exact


def test_unimodular_no_splitting():
    assert obstruct.unimodular_no_splitting(
        direct_sum(catalog("su2"), catalog("e2")), k=50, seed=3
    )
    assert obstruct.unimodular_no_splitting(
        direct_sum(catalog("e11"), catalog("e11")), k=50, seed=3
    )


def test_non_unimodular_standard_splitting_survives():
    # the specific standard decomposition survives on r2R + r3
    L = direct_sum(catalog("r2R"), catalog("r3"))
    rep = obstruct.check_obstruction(L, _v_std())
    assert rep.verdict == obstruct.VERDICT_OBSTRUCTED


def test_j_invariance_of_v_on_obstructed_algebras(rng):
    """For closed stable rho on an obstructed algebra, alpha ^ (v -| rho) ^ rho = 0
    for alpha in V and v in Ann(V)."""
    for names in (("r2R", "r3"), ("r2R", "r2R"), ("h3", "r3mu")):
        mu = Fraction(1, 2) if names[1] == "r3mu" else None
        L = direct_sum(catalog(names[0]), catalog(names[1], mu))
        z3 = L.closed_forms(3).basis
        alpha1, alpha2 = _v_std()
        ann = [Vector.basis(i) for i in (2, 3, 5, 6)]
        found_stable = 0
        for _ in range(100):
            rho = KForm(3)
            for b in z3:
                rho = rho + b.scale(Fraction(rng.randint(-5, 5)))
            if lambda_of(rho) == 0:
                continue
            found_stable += 1
            for alpha in (alpha1, alpha2):
                for v in ann:
                    val = volume_ratio(wedge(wedge(alpha, contract(v, rho)), rho))
                    assert val == 0
            if found_stable >= 20:
                break
        assert found_stable > 0
