from __future__ import annotations

from fractions import Fraction

from halfflat import linalg
from halfflat.scalars import QuadExt

from .conftest import random_fraction


def test_rref_rank_nullspace(rng):
    for _ in range(50):
        n = rng.randint(1, 6)
        m = rng.randint(1, 8)
        mat = [[random_fraction(rng, 5) for _ in range(m)] for _ in range(n)]
        ker = linalg.nullspace(mat)
        assert linalg.rank(mat) + len(ker) == m
        for v in ker:
            assert all(x == 0 for x in linalg.mat_vec(mat, v))


def test_solve_consistency(rng):
    for _ in range(50):
        n = rng.randint(1, 6)
        m = rng.randint(1, 6)
        mat = [[random_fraction(rng, 5) for _ in range(m)] for _ in range(n)]
        x0 = [random_fraction(rng, 5) for _ in range(m)]
        rhs = linalg.mat_vec(mat, x0)
        x = linalg.solve(mat, rhs)
        assert x is not None
        assert linalg.mat_vec(mat, x) == rhs


def test_invert_round_trip(rng):
    for _ in range(30):
        n = rng.randint(1, 5)
        mat = [[random_fraction(rng, 4) for _ in range(n)] for _ in range(n)]
        inv = linalg.invert(mat)
        if inv is None:
            assert linalg.det(mat) == 0
            continue
        assert linalg.mat_eq(linalg.mat_mul(mat, inv), linalg.identity(n))


def test_inertia_identity_and_diag():
    assert linalg.inertia(linalg.identity(6)) == (6, 0, 0)
    d = [[Fraction(x if i == j else 0) for j in range(4)] for i, x in enumerate([3, -2, 0, -1])]
    assert linalg.inertia(d) == (1, 2, 1)


def test_inertia_congruence_invariance(rng):
    # Sylvester: inertia of B^T A B equals inertia of A for invertible B
    for _ in range(40):
        n = rng.randint(1, 5)
        a = [[random_fraction(rng, 4) for _ in range(n)] for _ in range(n)]
        sym = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
        b = [[random_fraction(rng, 3) for _ in range(n)] for _ in range(n)]
        if linalg.det(b) == 0:
            continue
        congruent = linalg.mat_mul(linalg.transpose(b), linalg.mat_mul(sym, b))
        assert linalg.inertia(congruent) == linalg.inertia(sym)


def test_inertia_hyperbolic_block():
    h = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert linalg.inertia(h) == (1, 1, 0)


def test_inertia_over_quadratic_extension():
    r2 = QuadExt(0, 1, 2)
    m = [[r2, Fraction(1)], [Fraction(1), r2]]  # eigenvalues sqrt2 +- 1 > 0
    assert linalg.inertia(m) == (2, 0, 0)
    m2 = [[r2 - 2, Fraction(0)], [Fraction(0), r2]]  # sqrt2 - 2 < 0
    assert linalg.inertia(m2) == (1, 1, 0)
