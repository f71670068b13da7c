import cmath
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from charvar.symbolic import (
    CycloContext,
    LaurentMatrix,
    LaurentPoly,
    MonomialUnit,
    cyclotomic_polynomial,
    euler_phi,
    hermite_normal_form,
    integer_kernel,
    parse_laurent,
    rank_finite_field,
    rank_fraction_free,
    smith_normal_form,
)
from charvar.symbolic.smith import matmul

VARS = ("s", "t")

small_int = st.integers(-3, 3)
exps = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
polys = st.dictionaries(exps, st.integers(-4, 4), max_size=4).map(
    lambda d: LaurentPoly(VARS, CycloContext(1), {e: (c,) for e, c in d.items()}))


# --------------------------------------------------------------------------- cyclotomic

@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.symbols("x")
    expected = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
    assert list(cyclotomic_polynomial(n)) == expected
    assert len(expected) - 1 == euler_phi(n)


@given(st.sampled_from([3, 4, 5, 6, 8, 12]), st.lists(st.integers(-5, 5), min_size=12, max_size=12),
       st.lists(st.integers(-5, 5), min_size=12, max_size=12))
def test_cyclotomic_product_agrees_with_complex(N, a, b):
    ctx = CycloContext(N)
    a = tuple(Fraction(x) for x in a[:ctx.phi])
    b = tuple(Fraction(x) for x in b[:ctx.phi])
    assert abs(ctx.to_complex(ctx.mul(a, b)) - ctx.to_complex(a) * ctx.to_complex(b)) < 1e-9


@given(st.sampled_from([3, 4, 5, 7, 12]), st.lists(st.integers(-4, 4), min_size=12, max_size=12))
def test_cyclotomic_inverse(N, a):
    ctx = CycloContext(N)
    a = tuple(Fraction(x) for x in a[:ctx.phi])
    if not any(a):
        return
    assert ctx.mul(a, ctx.inverse(a)) == ctx.one


def test_rotation_is_root_of_unity():
    ctx = CycloContext(12)
    z = ctx.rotation(Fraction(5, 12))
    assert abs(ctx.to_complex(z) - cmath.exp(2j * cmath.pi * 5 / 12)) < 1e-12


# --------------------------------------------------------------------------- Laurent ring

@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == LaurentPoly.zero(VARS)


@given(polys, polys, st.fractions(0, 1, max_denominator=6), st.fractions(0, 1, max_denominator=6))
def test_evaluation_is_a_ring_map(p, q, a, b):
    ctx1, x = (p * q).evaluate([a, b])
    ctx2, y = p.evaluate([a, b])
    ctx3, z = q.evaluate([a, b])
    assert abs(ctx1.to_complex(x) - ctx2.to_complex(y) * ctx3.to_complex(z)) < 1e-8


@given(polys)
def test_parse_roundtrip(p):
    assert parse_laurent(str(p), VARS) == p


def test_parse_examples():
    V = ("t1", "t2", "t3")
    p = parse_laurent("t2*(1-t1*t3)", V)
    assert p == parse_laurent("t2 - t1*t2*t3", V)
    assert str(parse_laurent("t1^-1*(t1-1)", V)) in {"1 - t1^-1", "-t1^-1 + 1"}


# --------------------------------------------------------------------------- integer lattices

int_matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(int_matrices)
def test_smith_normal_form(B):
    U, D, V = smith_normal_form(B)
    assert matmul(matmul(U, B), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    ref = sympy_snf(sympy.Matrix(B), domain=sympy.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
    assert sorted(diag) == ref_diag


@given(int_matrices, st.randoms(use_true_random=False))
def test_hnf_is_a_lattice_invariant(B, rnd):
    n = len(B[0])
    H = hermite_normal_form(B, n)
    # add random integer combinations of rows; lattice and HNF stay the same
    mixed = [list(r) for r in B]
    for _ in range(5):
        i, j = rnd.randrange(len(mixed)), rnd.randrange(len(mixed))
        if i != j:
            k = rnd.randint(-3, 3)
            mixed[i] = [a + k * b for a, b in zip(mixed[i], mixed[j])]
    assert hermite_normal_form(mixed, n) == H
    assert hermite_normal_form(H, n) == H


@given(int_matrices)
def test_integer_kernel_is_saturated(B):
    n = len(B[0])
    K = integer_kernel(B, n)
    for k in K:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in B)
    rank = sympy.Matrix(B).rank()
    assert len(K) == n - rank
    if K:
        _, D, _ = smith_normal_form(K)
        assert all(D[i][i] == 1 for i in range(len(K)))


# --------------------------------------------------------------------------- ranks

def _random_matrix(rng, rows, cols, nvars, rank=None):
    V = tuple(f"s{i}" for i in range(1, nvars + 1))

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(0, 3)):
            e = tuple(rng.randint(-1, 2) for _ in V)
            terms[e] = (rng.randint(-3, 3),)
        return LaurentPoly(V, CycloContext(1), terms)

    if rank is None:
        return LaurentMatrix([[rand_poly() for _ in range(cols)] for _ in range(rows)], V)
    A = LaurentMatrix([[rand_poly() for _ in range(rank)] for _ in range(rows)], V)
    B = LaurentMatrix([[rand_poly() for _ in range(cols)] for _ in range(rank)], V)
    return A @ B


def _evaluation_rank(M, rng, trials=4):
    """Oracle: exact rational rank at random rational points (sympy)."""
    best = 0
    for _ in range(trials):
        pt = [Fraction(rng.randint(2, 50), rng.randint(1, 7)) for _ in M.variables]
        rows = []
        for r in M.rows:
            row = []
            for p in r:
                val = Fraction(0)
                for e, c in p.terms.items():
                    term = Fraction(c[0])
                    for x, k in zip(pt, e):
                        term *= x ** k
                    val += term
                row.append(sympy.Rational(val.numerator, val.denominator))
            rows.append(row)
        best = max(best, sympy.Matrix(rows).rank())
    return best


@pytest.mark.parametrize("seed", range(12))
def test_fraction_free_rank_matches_evaluation_oracle(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(2, 5), rng.randint(2, 5)
    r = rng.choice([None, 1, 2])
    M = _random_matrix(rng, rows, cols, 2, r)
    assert rank_fraction_free(M) == _evaluation_rank(M, rng)


def test_rank_over_cyclotomic_constants():
    ctx = CycloContext(4)
    V = ()
    i = LaurentPoly(V, ctx, {(): ctx.power(1)})
    one = LaurentPoly.constant(1, V, ctx)
    # [[1, i], [i, -1]] has rank 1 over Q(i)
    M = LaurentMatrix([[one, i], [i, -one]], V, ctx)
    assert rank_fraction_free(M) == 1
    assert rank_finite_field(M, assignment=[]) == 1


def test_substitution_into_units():
    V = ("t1", "t2")
    p = parse_laurent("t1*t2 - 1", V)
    q = p.substitute([MonomialUnit(Fraction(1, 2), (1,)), MonomialUnit(Fraction(1, 2), (-1,))], ("s",))
    assert q.is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_finite_field_rank_never_exceeds_exact(seed):
    rng = random.Random(seed)
    M = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), 2, rng.choice([None, 1]))
    assert rank_finite_field(M, seed=seed, trials=1) <= rank_fraction_free(M)
