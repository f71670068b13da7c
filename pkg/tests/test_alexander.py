import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from charvar.alexander import (GroupRingElement, alexander_matrix, block_alexander, fox_derivative,
                               fox_row, gassner, os_algebra, resonance_depth, torus_variables)
from charvar.arrangement import decone, intersection_data
from charvar.braidgroup import PureBraid, Word, fibered_presentation
from charvar.catalog import load_arrangement
from charvar.symbolic import LaurentPoly

N = 4
VARS = torus_variables(N)
words = st.lists(st.tuples(st.integers(1, N), st.sampled_from((1, -1))), max_size=12).map(Word)


def ev(p: LaurentPoly, point):
    """Rational evaluation, written out directly from the term dictionary."""
    total = Fraction(0)
    for e, c in p.terms.items():
        term = Fraction(c[0])
        for v, k in zip(point, e):
            term *= v ** k
        total += term
    return total


def ev_word(w: Word, point):
    out = Fraction(1)
    for g, e in w.letters:
        out *= point[g - 1] ** e
    return out


def ev_ring(r: GroupRingElement, point):
    return sum((c * ev_word(w, point) for w, c in r.terms.items()), Fraction(0))


points = st.lists(st.fractions(min_value=Fraction(1, 4), max_value=4).filter(bool),
                  min_size=N, max_size=N)


@settings(max_examples=100, deadline=None)
@given(words, points)
def test_fox_fundamental_formula(w, pt):
    lhs = sum((ev_ring(fox_derivative(w, j), pt) * (pt[j - 1] - 1) for j in range(1, N + 1)), Fraction(0))
    assert lhs == ev_word(w, pt) - 1


@settings(max_examples=100, deadline=None)
@given(words, words, st.integers(1, N))
def test_fox_product_rule(u, v, j):
    assert fox_derivative(u * v, j) == fox_derivative(u, j) + fox_derivative(v, j).left(u)


@settings(max_examples=100, deadline=None)
@given(words)
def test_fox_row_is_abelianized_derivative(w):
    row = fox_row(w, VARS)
    for j in range(1, N + 1):
        assert row[j - 1] == fox_derivative(w, j).abelianize(VARS)


def test_fox_of_generators():
    assert fox_derivative(Word.gen(2), 2) == GroupRingElement.of(Word())
    assert fox_derivative(Word.gen(2, -1), 2) == GroupRingElement.of(Word.gen(2, -1), -1)
    assert fox_derivative(Word.gen(2), 1) == GroupRingElement()


@st.composite
def pure_braids(draw, n=N, max_len=4):
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        i = draw(st.integers(1, n - 1))
        j = draw(st.integers(i + 1, n))
        letters.append((i, j, draw(st.sampled_from((1, -1)))))
    return PureBraid(n, tuple(letters))


@settings(max_examples=40, deadline=None)
@given(pure_braids(), pure_braids())
def test_gassner_is_multiplicative(b1, b2):
    assert gassner(b1 * b2) == gassner(b1) @ gassner(b2)


@settings(max_examples=40, deadline=None)
@given(pure_braids(), points)
def test_gassner_fixes_boundary_vector(b, pt):
    G = gassner(b)
    for i in range(N):
        assert sum(ev(G[i, k], pt) * (pt[k] - 1) for k in range(N)) == pt[i] - 1
    one = [Fraction(1)] * N
    for i in range(N):
        for k in range(N):
            assert ev(G[i, k], one) == (1 if i == k else 0)


def test_alexander_matrix_vanishes_at_identity(d_model):
    for M in (d_model.matrix, alexander_matrix(d_model.presentation)):
        one = [Fraction(1)] * len(M.variables)
        assert all(ev(M[i, j], one) == 0 for i in range(M.shape[0]) for j in range(M.shape[1]))


def _rank_at(M, pt):
    return sympy.Matrix([[ev(M[i, j], pt) for j in range(M.shape[1])] for i in range(M.shape[0])]).rank()


@pytest.mark.parametrize("seed", range(6))
def test_block_form_matches_fox_jacobian_pointwise(deleted_b3, seed):
    P = fibered_presentation(decone(deleted_b3, 5).affine, (-1, 1))
    rng = random.Random(seed)
    pt = [Fraction(rng.randint(2, 9), rng.randint(1, 5)) for _ in range(P.ngens)]
    assert _rank_at(block_alexander(P), pt) == _rank_at(alexander_matrix(P), pt)


# --------------------------------------------------------------------------- Orlik-Solomon

@pytest.mark.parametrize("name, b2", [("a3", 11), ("non-fano", 15), ("b3", 23), ("deleted-b3", 19)])
def test_os_degree_two(name, b2):
    # b2 read off the known factorizations (1+t)(1+a t)(1+b t) of these Poincare polynomials
    arr, _ = load_arrangement(name)
    assert os_algebra(arr).dim2 == b2


def os_oracle_depth(flats, n, lam):
    """dim H^1 of the Aomoto complex, built from the exterior algebra directly."""
    pairs = list(combinations(range(n), 2))
    idx = {p: k for k, p in enumerate(pairs)}

    def wedge(i, j):
        v = [0] * len(pairs)
        if i != j:
            v[idx[(min(i, j), max(i, j))]] = 1 if i < j else -1
        return v

    rels = []
    for f in flats:
        for i, j, k in combinations(f, 3):
            # boundary of e_i e_j e_k
            rels.append([a - b + c for a, b, c in zip(wedge(j, k), wedge(i, k), wedge(i, j))])
    R = sympy.Matrix(rels) if rels else sympy.zeros(0, len(pairs))
    images = []
    for k in range(n):
        v = [0] * len(pairs)
        for i in range(n):
            if lam[i]:
                v = [a + sympy.Rational(lam[i]) * b for a, b in zip(v, wedge(i, k))]
        images.append(v)
    Im = sympy.Matrix(images)
    rank = R.col_join(Im).rank() - R.rank()
    if not any(lam):
        return n
    return n - rank - 1


@pytest.mark.parametrize("name", ["a3", "non-fano", "deleted-b3"])
def test_resonance_depth_matches_exterior_algebra(name):
    arr, _ = load_arrangement(name)
    flats = intersection_data(arr).flats
    os = os_algebra(arr)
    rng = random.Random(7)
    cands = [[rng.randint(-2, 2) for _ in range(arr.n)] for _ in range(15)]
    for f in flats:
        if len(f) >= 3:
            lam = [0] * arr.n
            for i in f[:-1]:
                lam[i] = rng.randint(1, 3)
            lam[f[-1]] = -sum(lam)
            cands.append(lam)
    for lam in cands:
        assert resonance_depth(os, lam) == os_oracle_depth(flats, arr.n, lam)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_no_resonance_off_the_sum_zero_hyperplane(lam):
    D, _ = load_arrangement("deleted-b3")
    os = os_algebra(D)
    if sum(lam) != 0:
        assert resonance_depth(os, lam) == 0
    else:
        assert resonance_depth(os, lam) >= 0


def test_local_resonance_depth():
    D, _ = load_arrangement("deleted-b3")
    os = os_algebra(D)
    for f in intersection_data(D).flats:
        lam = [0] * D.n
        for k, i in enumerate(f):
            lam[i] = k + 1
        lam[f[0]] -= sum(lam)
        assert resonance_depth(os, lam) >= len(f) - 2
