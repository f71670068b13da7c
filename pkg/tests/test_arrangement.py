from fractions import Fraction
from itertools import combinations, permutations

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from charvar.arrangement import (
    Arrangement,
    ArrangementError,
    cone,
    decone,
    find_embeddings,
    find_subarrangements,
    generic_section,
    intersection_data,
    parse_arrangement,
    pattern_automorphisms,
    suggest_direction,
    wiring_diagram,
)
from charvar.catalog import load_arrangement


def collinear_triples(arr):
    """Oracle: triples of central planes sharing a line, by sympy determinants."""
    out = set()
    for i, j, k in combinations(range(arr.n), 3):
        M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in arr.forms[a][:3]]
                          for a in (i, j, k)])
        if M.det() == 0:
            out.add(frozenset((i, j, k)))
    return out


@pytest.mark.parametrize("name, census", [
    ("a3", {2: 3, 3: 4}),
    ("non-fano", {2: 3, 3: 6}),
    ("b3", {2: 6, 3: 4, 4: 3}),
    ("deleted-b3", {2: 4, 3: 6, 4: 1}),
    ("grunbaum", {2: 6, 3: 7, 4: 3}),
])
def test_census(name, census):
    arr, _ = load_arrangement(name)
    assert intersection_data(arr).census() == census


@pytest.mark.parametrize("name", ["a3", "non-fano", "b3", "deleted-b3", "grunbaum", "falk-f1", "ziegler-z1"])
def test_flats_match_determinant_oracle(name):
    arr, _ = load_arrangement(name)
    data = intersection_data(arr)
    ours = {frozenset(t) for f in data.flats for t in combinations(f, 3)}
    assert ours == collinear_triples(arr)
    assert sum(len(f) * (len(f) - 1) // 2 for f in data.flats) == arr.n * (arr.n - 1) // 2


forms3 = st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=3, max_size=7, unique=True)


@settings(max_examples=60, deadline=None)
@given(forms3)
def test_random_central_flats(forms):
    try:
        arr = Arrangement(3, tuple(f + (0,) for f in forms), tuple(str(i) for i in range(len(forms))))
    except ArrangementError:
        assume(False)
    data = intersection_data(arr)
    ours = {frozenset(t) for f in data.flats for t in combinations(f, 3)}
    assert ours == collinear_triples(arr)
    pairs = [p for f in data.flats for p in combinations(f, 2)]
    assert len(pairs) == len(set(pairs)) == arr.n * (arr.n - 1) // 2


lines2 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)),
                  min_size=2, max_size=6, unique=True)


@settings(max_examples=60, deadline=None)
@given(lines2)
def test_cone_decone_roundtrip(forms):
    try:
        aff = Arrangement(2, tuple(forms), tuple(f"L{i}" for i in range(len(forms))))
    except ArrangementError:
        assume(False)
    central = cone(aff)
    dc = decone(central, central.n - 1)
    assert dc.affine.labels == aff.labels
    assert dc.indices == tuple(range(aff.n))
    # same incidences: the decone is the original up to an affine change of coordinates
    assert intersection_data(dc.affine) == intersection_data(aff)


def test_decone_bookkeeping(deleted_b3):
    dc = decone(deleted_b3, 5)
    assert dc.removed == 5
    assert dc.indices == (0, 1, 2, 3, 4, 6, 7)
    assert dc.affine.labels == ("1", "2", "3", "4", "5", "7", "8")


def test_parse_forms_and_json():
    arr = parse_arrangement("x, y, z, x-y, x-z, y-z")
    assert arr.central and arr.n == 6
    again = parse_arrangement(arr.to_json())
    assert again.forms == arr.forms
    assert arr.form_str(3) == "x-y"
    aff = parse_arrangement("x, y, x+y-1")
    assert aff.ambient_dim == 2 and not aff.central


@pytest.mark.parametrize("text", ["x, 2x", "x, y, x+1z+1", "0x"])
def test_bad_arrangements(text):
    with pytest.raises(ArrangementError):
        parse_arrangement(text)


def test_wiring_diagram_vertices(deleted_b3):
    aff = decone(deleted_b3, deleted_b3.n - 1).affine
    d = suggest_direction(aff)
    wd = wiring_diagram(aff, d)
    assert len(wd.vertices) == len(intersection_data(aff).flats)
    assert sorted(len(v.wires) for v in wd.vertices) == sorted(len(f) for f in intersection_data(aff).flats)
    # each vertex lists the wires of one flat
    flats = {frozenset(wd.wire_lines[w - 1] for w in v.wires) for v in wd.vertices}
    assert flats == {frozenset(f) for f in intersection_data(aff).flats}


def test_non_generic_projection_is_rejected():
    aff = parse_arrangement("x, y, x+y-2, x-y")
    with pytest.raises(ArrangementError):
        wiring_diagram(aff, (0, 1))  # y = 0 line is a fiber
    with pytest.raises(ArrangementError):
        wiring_diagram(aff, (1, 0))  # two vertices over x = 0


def test_generic_section(deleted_b3):
    sec = generic_section(deleted_b3, (Fraction(3, 7), Fraction(5, 11), 1))
    assert intersection_data(sec).multiple() == intersection_data(deleted_b3).multiple()


def brute_embeddings(data, pattern):
    out = []
    for phi in permutations(range(data.n), pattern.n):
        if data.restrict(phi) == _relabel(pattern, phi):
            out.append(phi)
    return sorted(out)


def _relabel(pattern, phi):
    # flats of the pattern, expressed in the positions that restrict() uses
    order = sorted(range(len(phi)), key=lambda i: phi[i])
    pos = {i: order.index(i) for i in range(len(phi))}
    flats = sorted(tuple(sorted(pos[v] for v in f)) for f in pattern.flats)
    from charvar.arrangement import IntersectionData
    return IntersectionData(pattern.n, tuple(flats))


def test_embeddings_match_brute_force():
    a3, _ = load_arrangement("a3")
    nf, _ = load_arrangement("non-fano")
    pat, data = intersection_data(a3), intersection_data(nf)
    assert find_embeddings(data, pat) == brute_embeddings(data, pat)


def test_pattern_counts(deleted_b3):
    b3, _ = load_arrangement("b3")
    D = intersection_data(deleted_b3)
    # automorphisms of the deleted B3 matroid, and its copies inside B3
    auts = pattern_automorphisms(D)
    assert len(auts) == len(brute_embeddings(D, D))
    subs = find_subarrangements(b3, D)
    assert (0, 1, 3, 4, 5, 6, 7, 8) in subs
    for s in subs:
        assert len(find_embeddings(intersection_data(b3).restrict(s), D)) == len(auts)
