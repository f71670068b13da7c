import random
from dataclasses import replace
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charvar.alexander import os_algebra, resonance_depth
from charvar.catalog import deleted_b3_pattern, load_arrangement, load_coset
from charvar.varieties import (
    Character,
    CharacterError,
    TorusCoset,
    build_model,
    certify_coset,
    char_poset_report,
    coset_intersect,
    depth,
    generic_depth,
    point_components,
    quick_reject,
    resonance_components,
    resonance_cosets,
    search_translated,
    verify_point,
)

F = Fraction


# --------------------------------------------------------------------------- characters

def test_character_arithmetic():
    t = Character.parse("1/2, 1/3, 1/6, 0")
    assert t.order == 6
    assert t.product_condition()
    assert (t * t.inverse()).is_identity()
    assert (t ** 6).is_identity()
    assert Character.from_signs([1, -1, -1, 1]).q == (0, F(1, 2), F(1, 2), 0)
    assert Character.parse("3/2, -1/2").q == (F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        Character.parse("1/2, x")


# --------------------------------------------------------------------------- cosets

N3 = 3
rows = st.lists(st.lists(st.integers(-3, 3), min_size=N3, max_size=N3).filter(any), min_size=0, max_size=2)
translates = st.lists(st.sampled_from([F(0), F(1, 2), F(1, 3), F(2, 3), F(1, 6)]), min_size=N3, max_size=N3)
cosets = st.builds(lambda r, t: TorusCoset.from_lattice(N3, r, t), rows, translates)

ORDER = 12
GRID = [Character(q) for q in product([F(a, ORDER) for a in range(ORDER)], repeat=N3)]


def _members(K):
    return {t for t in GRID if K.contains_point(t)}


@settings(max_examples=40, deadline=None)
@given(cosets, cosets)
def test_intersection_matches_pointwise_oracle(K1, K2):
    pieces = coset_intersect(K1, K2)
    assert pieces == coset_intersect(K2, K1)
    union = set().union(*(_members(P) for P in pieces)) if pieces else set()
    assert union == _members(K1) & _members(K2)
    for P in pieces:
        assert K1.contains(P) and K2.contains(P)


@settings(max_examples=30, deadline=None)
@given(cosets, cosets, cosets)
def test_intersection_is_associative(K1, K2, K3):
    def meet(A, B):
        return {Q for P in A for R in B for Q in coset_intersect(P, R)}
    assert meet(meet([K1], [K2]), [K3]) == meet([K1], meet([K2], [K3]))


@settings(max_examples=40, deadline=None)
@given(cosets)
def test_parametrization_lands_in_coset(K):
    rng = random.Random(0)
    for t in K.sample_points(5, rng):
        assert K.contains_point(t)
    for t in K.torsion_points(6):
        assert K.contains_point(t) and 6 % t.order == 0
    assert TorusCoset.from_json(K.to_json()) == K


def test_coset_C_shape():
    C = load_coset("coset-C.json")
    assert C.dim == 1 and C.translate_order() == 2
    assert C.is_essential()
    assert not C.contains_point(Character.identity(8))


# --------------------------------------------------------------------------- depth

def _random_characters(n, count, rng, den=(2, 3, 4, 5, 6)):
    out = []
    while len(out) < count:
        d = rng.choice(den)
        q = [F(rng.randrange(d), d) for _ in range(n - 1)]
        q.append(-sum(q))
        t = Character(tuple(q))
        if not t.is_identity():
            out.append(t)
    return out


def test_depth_is_independent_of_presentation(d_model, deleted_b3):
    others = [build_model(deleted_b3, 7), build_model(deleted_b3, 0),
              replace(d_model, block=True)]
    rng = random.Random(11)
    chars = _random_characters(deleted_b3.n, 25, rng)
    # add points from the known components so positive depths are exercised
    chars += load_coset("coset-C.json").torsion_points(4)[:5]
    for t in chars:
        dt = depth(d_model, t)
        for M in others:
            assert depth(M, t) == dt


def test_depth_conventions(d_model):
    assert depth(d_model, Character.identity(8)) == 8
    with pytest.raises(CharacterError):
        depth(d_model, Character.parse("1/2,0,0,0,0,0,0,0"))
    with pytest.raises(CharacterError):
        depth(d_model, Character.parse("1/2,1/2"))


def test_exponentials_of_resonance_lie_in_V1(deleted_b3, d_model):
    rng = random.Random(3)
    comps = resonance_components(deleted_b3)
    checked = 0
    for c in comps:
        for _ in range(3):
            lam = c.sample(rng)
            s = F(1, rng.choice([5, 7, 9]))
            t = Character(tuple(s * x for x in lam))
            if t.is_identity():
                continue
            assert depth(d_model, t) >= 1
            checked += 1
    assert checked >= 10


def test_certified_cosets_hold_pointwise(d_model):
    C = load_coset("coset-C.json")
    cert = certify_coset(d_model, C, 1)
    assert cert.holds and cert.generic_depth == 1
    rng = random.Random(5)
    for t in C.sample_points(10, rng):
        if not t.is_identity():
            assert verify_point(d_model, t, 1).confirmed
    assert not certify_coset(d_model, C, 2).holds
    assert quick_reject(d_model, C, 2)
    assert not quick_reject(d_model, C, 1)


def test_generic_depth_methods_agree(d_model):
    C = load_coset("coset-C.json")
    assert generic_depth(d_model, C) == generic_depth(d_model, C, exact=False) == 1


# --------------------------------------------------------------------------- resonance

@pytest.mark.parametrize("name, local, total", [("a3", 4, 5), ("non-fano", 6, 9), ("deleted-b3", 7, 12)])
def test_resonance_counts(name, local, total):
    arr, _ = load_arrangement(name)
    comps = resonance_components(arr)
    assert sum(c.kind == "local" for c in comps) == local
    assert len(comps) == total


def test_resonance_components_are_resonant(deleted_b3):
    os = os_algebra(deleted_b3)
    rng = random.Random(1)
    for c in resonance_components(deleted_b3):
        assert sum(sum(b) for b in c.basis) == 0
        for _ in range(3):
            assert resonance_depth(os, c.sample(rng)) >= c.dim - 1


# --------------------------------------------------------------------------- report and translated

def test_report_single_node(a3_model):
    t = Character.parse("1/2,1/2,0,0,0,0")
    comps = point_components([("p", t)])
    rep = char_poset_report(a3_model, comps)
    assert rep.totals["components"] == 1 and rep.edges == []
    assert rep.nodes[0]["dim"] == 0 and rep.nodes[0]["depth"] == depth(a3_model, t)
    assert "none besides 1" in rep.format_text()


def test_report_lists_meets(a3_model):
    arr = a3_model.arrangement
    comps = resonance_cosets(resonance_components(arr))
    rep = char_poset_report(a3_model, comps)
    assert rep.totals["components"] == 5
    assert rep.totals["by_provenance"] == {"local": 4, "partition": 1}
    for e in rep.edges:
        assert len(e["members"]) >= 2


def test_translated_search_on_deleted_b3(d_model):
    found = search_translated(d_model, [deleted_b3_pattern()])
    assert len(found) == 1
    K = found[0].coset
    assert K.dim == 1 and K.translate_order() == 2
    assert K == load_coset("coset-C.json")
    assert found[0].certificate.generic_depth == 1
