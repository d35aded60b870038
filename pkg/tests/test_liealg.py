from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from halfflat import liealg
from halfflat.errors import CatalogError, JacobiError
from halfflat.exterior import KForm, basis_masks, covector, form, wedge
from halfflat.liealg import LieAlgebra, catalog, catalog_classes, direct_sum

from .conftest import random_fraction, random_form
from . import oracles


def all_class_instances():
    out = []
    for spec in catalog_classes():
        out.extend(spec.instances())
    return out


def test_catalog_standard_differentials():
    su2 = catalog("su2")
    assert su2.d(covector(1)) == form(2, [("e23", 1)])
    r2R = catalog("r2R")
    assert r2R.d(covector(2)) == form(2, [("e21", 1)])
    e2 = catalog("e2")
    assert e2.d(covector(2)) == form(2, [("e31", 1)])
    assert e2.d(covector(3)) == form(2, [("e12", 1)])
    r3mu = catalog("r3mu", Fraction(1, 2))
    assert r3mu.d(covector(2)) == form(2, [("e21", 1)])
    assert r3mu.d(covector(3)) == form(2, [("e31", Fraction(1, 2))])
    r3pmu = catalog("r3pmu", 2)
    assert r3pmu.d(covector(2)) == form(2, [("e21", 2), ("e13", 1)])
    assert r3pmu.d(covector(3)) == form(2, [("e21", 1), ("e31", 2)])


def test_catalog_rejects_bad_parameters():
    with pytest.raises(CatalogError):
        catalog("nope")
    with pytest.raises(CatalogError):
        catalog("r3mu", 2)
    with pytest.raises(CatalogError):
        catalog("r3mu", 0)
    with pytest.raises(CatalogError):
        catalog("r3pmu", Fraction(-1, 2))
    with pytest.raises(CatalogError):
        catalog("su2", 1)


def test_abelian_d_vanishes(rng):
    L = catalog("R3")
    for k in range(0, 4):
        a = random_form(rng, k)
        # restrict to first three indices
        a = KForm(k, {m: c for m, c in a.terms.items() if not m >> 3})
        assert L.d(a).is_zero()


def test_jacobi_detects_invalid_constants():
    # d e1 = e23, d e2 = e12, d e3 = 0 violates d^2 = 0
    diffs = [form(2, [("e23", 1)]), form(2, [("e12", 1)]), form(2)]
    with pytest.raises(JacobiError):
        LieAlgebra(3, diffs, name="bad")
    bad = LieAlgebra(3, diffs, name="bad", unchecked=True)
    assert not bad.check_jacobi()


def test_jacobi_on_catalog():
    for L in all_class_instances():
        assert L.check_jacobi()


def test_unimodularity_table():
    assert catalog("e11").is_unimodular()
    assert not catalog("r2R").is_unimodular()
    assert catalog("R3").is_unimodular()
    for L in all_class_instances():
        expected = L.name in ("su2", "sl2", "e2", "e11", "h3", "R3")
        assert L.is_unimodular() == expected


def test_direct_sum_structure():
    s = direct_sum(catalog("h3"), catalog("r2R"))
    assert s.d(covector(6)).is_zero()  # f3 of the r2R factor is closed
    assert s.d(covector(3)) == form(2, [("e12", 1)])  # h3 side
    assert s.d(covector(5)) == form(2, [("f21", 1)])  # r2R side shifted
    assert not s.is_unimodular()
    u = direct_sum(catalog("su2"), catalog("sl2"))
    assert u.is_unimodular()
    ab = direct_sum(catalog("R3"), catalog("R3"))
    assert ab.is_abelian()


def test_d_squared_zero_all_degrees_catalog_sums(rng):
    pairs = [("su2", "sl2"), ("h3", "r2R"), ("e2", "r3"), ("R3", "r3pmu")]
    for n1, n2 in pairs:
        L1 = catalog(n1, 2) if n1 == "r3pmu" else catalog(n1)
        L2 = catalog(n2, 2) if n2 == "r3pmu" else catalog(n2)
        L = direct_sum(L1, L2)
        for k in range(0, 6):
            a = random_form(rng, k)
            assert L.d(L.d(a)).is_zero()


def test_d_matches_dense_oracle(rng):
    L = direct_sum(catalog("sl2"), catalog("r3"))
    brackets = oracles.brackets_of(L)
    for _ in range(40):
        k = rng.randint(1, 4)
        a = random_form(rng, k, density=0.4)
        kd, dense = oracles.dense_d(brackets, *oracles.dense_from_sparse(a))
        assert oracles.dense_equal_sparse(kd, dense, L.d(a))


def test_d_preserves_summand_factors():
    L = direct_sum(catalog("su2"), catalog("r3mu", Fraction(-1, 2)))
    for k in range(1, 3):
        for mask in basis_masks(k):
            if mask >> 3 == 0:  # pure first factor
                img = L.d(KForm(k, {mask: Fraction(1)}))
                assert all(m >> 3 == 0 for m in img.terms)
            elif mask & 0b111 == 0:  # pure second factor
                img = L.d(KForm(k, {mask: Fraction(1)}))
                assert all(m & 0b111 == 0 for m in img.terms)


def test_unimodular_trace_equals_five_form_condition():
    for spec1 in catalog_classes():
        for L1 in spec1.instances()[:1]:
            for spec2 in catalog_classes():
                for L2 in spec2.instances()[:1]:
                    L = direct_sum(L1, L2)
                    assert L.is_unimodular() == L.is_unimodular_via_top_minus_one()


def test_closed_forms_dimensions():
    ab = direct_sum(catalog("R3"), catalog("R3"))
    assert ab.closed_forms(3).dim == 20
    L = direct_sum(catalog("r2R"), catalog("R3"))
    assert L.closed_forms(1).dim == 5
    # every two-form on the h3 factor is closed inside h3 + r2R
    s = direct_sum(catalog("h3"), catalog("r2R"))
    for mask in [0b011, 0b101, 0b110]:
        assert s.d(KForm(2, {mask: Fraction(1)})).is_zero()


def test_closed_forms_are_closed_and_complete(rng):
    L = direct_sum(catalog("e11"), catalog("r3"))
    for k in (1, 2, 3, 4, 5):
        sub = L.closed_forms(k)
        for b in sub.basis:
            assert L.d(b).is_zero()
        # completeness: rank of d on Lambda^k equals codimension
        masks = basis_masks(k)
        rows = [
            L.d(KForm(k, {m: Fraction(1)})).coefficients(basis_masks(k + 1))
            for m in masks
        ]
        from halfflat import linalg

        assert sub.dim == len(masks) - linalg.rank(rows)


def test_omega_squared_closed_iff_both_unimodular(rng):
    """d(omega^2) = 0 for nondegenerate omega in g1* x g2* iff both unimodular."""
    reps = [spec.instances()[0] for spec in catalog_classes()]
    checked = 0
    for L1, L2 in itertools.combinations_with_replacement(reps, 2):
        L = direct_sum(L1, L2)
        expected = L1.is_unimodular() and L2.is_unimodular()
        for attempt in range(20):
            terms = {}
            for i in range(3):
                for j in range(3, 6):
                    terms[(1 << i) | (1 << j)] = random_fraction(rng, 4)
            omega = KForm(2, terms)
            cube = wedge(wedge(omega, omega), omega)
            if cube.is_zero():
                continue
            assert L.d(wedge(omega, omega)).is_zero() == expected
            checked += 1
            break
        else:
            raise AssertionError("failed to draw a nondegenerate omega")
    assert checked == 78


def test_change_basis_preserves_jacobi_and_unimodularity(rng):
    for name in ("su2", "e11", "r3"):
        L = catalog(name)
        for _ in range(10):
            b = _random_unimodular_triangular(rng, 3)
            M = liealg.change_basis(L, b)
            assert M.check_jacobi()
            assert M.is_unimodular() == L.is_unimodular()


def _random_unimodular_triangular(rng: random.Random, n: int):
    lower = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    upper = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            lower[i][j] = random_fraction(rng, 2, 2)
            upper[j][i] = random_fraction(rng, 2, 2)
    from halfflat import linalg

    return linalg.mat_mul(lower, upper)
