import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charvar.arrangement import (Arrangement, ArrangementError, decone, intersection_data,
                                 parse_arrangement, suggest_direction, wiring_diagram)
from charvar.braidgroup import (PureBraid, Word, braid_monodromy, fiber_data, fibered_presentation,
                                full_twist, monodromy_presentation, presentation_from_wiring)

N = 5


def x(k, e=1):
    return Word.gen(k, e)


@st.composite
def pure_braids(draw, n=N, max_len=6):
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        i = draw(st.integers(1, n - 1))
        j = draw(st.integers(i + 1, n))
        letters.append((i, j, draw(st.sampled_from((1, -1)))))
    return PureBraid(n, tuple(letters))


words = st.lists(st.tuples(st.integers(1, N), st.sampled_from((1, -1))), max_size=10).map(Word)


def test_word_reduction():
    assert Word([(1, 1), (2, 1), (2, -1), (1, -1)]) == Word()
    w = x(1) * x(2, 2) * x(3, -1)
    assert w * w.inverse() == Word()
    assert w.exponent_sums(3) == [1, 2, -1]
    assert x(1).conjugate(x(2)) == x(2, -1) * x(1) * x(2)
    with pytest.raises(ValueError):
        Word([(0, 1)])


def test_generator_action_on_two_strands():
    # A_12 = s_1^2 acts by conjugation with x1 x2
    imgs = PureBraid.generator(1, 2, 2).images()
    c = x(1) * x(2)
    assert imgs == (c * x(1) * c.inverse(), c * x(2) * c.inverse())


@settings(max_examples=80, deadline=None)
@given(pure_braids())
def test_pure_braids_fix_the_boundary_word(b):
    prod = Word([(k, 1) for k in range(1, N + 1)])
    assert b.act(prod) == prod


@settings(max_examples=80, deadline=None)
@given(pure_braids())
def test_images_are_conjugates_of_generators(b):
    for k, img in enumerate(b.images(), start=1):
        # a reduced conjugate u x_k u^-1 has odd length and x_k in the middle
        L = len(img.letters)
        assert L % 2 == 1 and img.letters[L // 2] == (k, 1)
        u = Word(img.letters[: L // 2])
        assert img == u * x(k) * u.inverse()


@settings(max_examples=60, deadline=None)
@given(pure_braids(), pure_braids(), words)
def test_action_is_first_letter_first(b1, b2, w):
    assert (b1 * b2).act(w) == b2.act(b1.act(w))
    assert (b1 * b1.inverse()).act(w) == w
    assert b1.act(w) == w.substitute(b1.images())


@settings(max_examples=40, deadline=None)
@given(words)
def test_full_twist_is_conjugation_by_boundary(w):
    c = Word([(k, 1) for k in range(1, N + 1)])
    assert full_twist(range(1, N + 1), N).act(w) == c * w * c.inverse()


@settings(max_examples=40, deadline=None)
@given(pure_braids(max_len=4))
def test_full_twist_is_central(b):
    F = full_twist(range(1, N + 1), N)
    assert (b * F).images() == (F * b).images()


def _generic_arrangement(rng, n):
    while True:
        forms = tuple((rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-9, 9)) for _ in range(n))
        try:
            arr = Arrangement(2, forms, tuple(str(i + 1) for i in range(n)))
        except ArrangementError:
            continue
        # no parallel lines, so the monodromy at infinity is the full twist
        if any(a[0] * b[1] == a[1] * b[0] for i, a in enumerate(forms) for b in forms[i + 1:]):
            continue
        return arr


@pytest.mark.parametrize("seed", range(8))
def test_monodromy_product_is_full_twist(seed):
    rng = random.Random(seed)
    arr = _generic_arrangement(rng, rng.randint(3, 6))
    wd = wiring_diagram(arr, suggest_direction(arr))
    total = PureBraid(wd.n)
    for a in braid_monodromy(wd):
        total = total * a
    assert total.images() == full_twist(range(1, wd.n + 1), wd.n).images()


def test_monodromy_of_concurrent_lines():
    arr = parse_arrangement("x, y, x-y, x+y-4")
    wd = wiring_diagram(arr, suggest_direction(arr))
    alphas = braid_monodromy(wd)
    assert sorted(len(v.wires) for v in wd.vertices) == [2, 2, 2, 3]
    P = monodromy_presentation(alphas, wd.flats)
    assert len(P.relators) == sum(len(f) - 1 for f in wd.flats)
    assert P.exponent_sums_vanish()


def test_deleted_b3_fibered_monodromy(deleted_b3):
    dc = decone(deleted_b3, 5)
    fd = fiber_data(dc.affine, (-1, 1))
    lab = lambda idx: [deleted_b3.labels[dc.indices[i]] for i in idx]
    assert lab(fd.wires) == ["1", "3", "2", "4"]
    assert lab(fd.fibers) == ["5", "8", "7"]
    A = lambda i, j, e=1: PureBraid.generator(i, j, 4, e)
    expected = [A(2, 3), A(2, 3, -1) * A(1, 3) * A(2, 3) * A(2, 4), A(2, 4, -1) * A(1, 4) * A(2, 4)]
    assert [b.images() for b in fd.monodromy] == [b.images() for b in expected]


def test_fibered_presentation_shape(deleted_b3):
    P = fibered_presentation(decone(deleted_b3, 5).affine, (-1, 1))
    assert P.ngens == 7 and len(P.relators) == 12
    assert [g.kind for g in P.generators] == ["wire"] * 4 + ["fiber"] * 3
    assert P.exponent_sums_vanish()


def test_presentation_from_wiring_relator_count(deleted_b3):
    aff = decone(deleted_b3, deleted_b3.n - 1).affine
    P = presentation_from_wiring(aff, suggest_direction(aff))
    flats = intersection_data(aff).flats
    assert len(P.relators) == sum(len(f) - 1 for f in flats)
    assert sorted(P.lines()) == sorted(aff.labels)


def test_not_fibered_is_reported():
    with pytest.raises(ArrangementError):
        fiber_data(parse_arrangement("x, y, x+y-1"), (1, 1))


def test_bad_braid_letters():
    with pytest.raises(ValueError):
        PureBraid(3, ((2, 2, 1),))
    with pytest.raises(ValueError):
        full_twist([1], 3)
    with pytest.raises(ValueError):
        PureBraid(3) * PureBraid(4)
