"""Free-group words, pure braids acting by the Artin representation, braid
monodromy of real line arrangements, and the two presentation constructions.

Generators are numbered from 1, matching wire numbers.  Braid words act
first letter first: ``(b1 * b2).act(w) == b2.act(b1.act(w))``, and
conjugation follows ``b.conjugate(d) == d^-1 * b * d``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .arrangement import Arrangement, ArrangementError, Vertex, WiringDiagram, to_fraction, wiring_diagram

Letter = tuple[int, int]  # (generator, exponent +-1)


class Word:
    """A freely reduced word in x_1, x_2, ... ."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        out: list[Letter] = []
        for g, e in letters:
            if e not in (1, -1) or g < 1:
                raise ValueError(f"bad letter {(g, e)}")
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        self.letters = tuple(out)

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, 1 if e > 0 else -1),) * abs(e))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.letters))

    def conjugate(self, by: "Word") -> "Word":
        """by^-1 * self * by"""
        return by.inverse() * self * by

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def exponent_sums(self, n: int) -> list[int]:
        out = [0] * n
        for g, e in self.letters:
            out[g - 1] += e
        return out

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Replace x_g by ``images[g-1]``."""
        out: list[Letter] = []
        for g, e in self.letters:
            img = images[g - 1]
            out.extend(img.letters if e > 0 else img.inverse().letters)
        return Word(out)

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            name = names[g - 1] if names else f"x{g}"
            parts.append(name if e > 0 else f"{name}^-1")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Word({self.format()})"

    def to_json(self) -> list[list[int]]:
        return [[g, e] for g, e in self.letters]


# ---------------------------------------------------------------------------
# Artin action
# ---------------------------------------------------------------------------

def _sigma_images(n: int, i: int, e: int) -> tuple[Word, ...]:
    x = [Word.gen(k) for k in range(1, n + 1)]
    imgs = list(x)
    if e > 0:
        imgs[i - 1] = x[i - 1] * x[i] * x[i - 1].inverse()
        imgs[i] = x[i - 1]
    else:
        imgs[i - 1] = x[i]
        imgs[i] = x[i].inverse() * x[i - 1] * x[i]
    return tuple(imgs)


def _compose(first: Sequence[Word], second: Sequence[Word]) -> tuple[Word, ...]:
    """Images of the automorphism 'apply first, then second'."""
    return tuple(w.substitute(second) for w in first)


@lru_cache(maxsize=None)
def generator_images(n: int, i: int, j: int, e: int = 1) -> tuple[Word, ...]:
    """Images of x_1..x_n under A_{i,j}^e, with
    A_{i,j} = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1."""
    if not 1 <= i < j <= n:
        raise ValueError(f"A_{{{i},{j}}} out of range for {n} strands")
    sig = [(k, 1) for k in range(j - 1, i, -1)] + [(i, 1), (i, 1)] + [(k, -1) for k in range(i + 1, j)]
    if e < 0:
        sig = [(k, -s) for k, s in reversed(sig)]
    imgs = tuple(Word.gen(k) for k in range(1, n + 1))
    for k, s in sig:
        imgs = _compose(imgs, _sigma_images(n, k, s))
    return imgs


@dataclass(frozen=True)
class PureBraid:
    """A word in the pure braid generators A_{i,j}^{+-1} on n strands."""

    n: int
    letters: tuple[tuple[int, int, int], ...] = ()  # (i, j, e)

    def __post_init__(self):
        for i, j, e in self.letters:
            if not 1 <= i < j <= self.n or e not in (1, -1):
                raise ValueError(f"bad pure braid letter {(i, j, e)} on {self.n} strands")

    @classmethod
    def generator(cls, i: int, j: int, n: int, e: int = 1) -> "PureBraid":
        return cls(n, ((i, j, e),))

    def __mul__(self, other: "PureBraid") -> "PureBraid":
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return PureBraid(self.n, self.letters + other.letters)

    def inverse(self) -> "PureBraid":
        return PureBraid(self.n, tuple((i, j, -e) for i, j, e in reversed(self.letters)))

    def conjugate(self, delta: "PureBraid") -> "PureBraid":
        return delta.inverse() * self * delta

    def images(self) -> tuple[Word, ...]:
        imgs = tuple(Word.gen(k) for k in range(1, self.n + 1))
        for i, j, e in self.letters:
            imgs = _compose(imgs, generator_images(self.n, i, j, e))
        return imgs

    def act(self, w: Word) -> Word:
        return artin_act(self, w)

    def format(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"A{i},{j}" + ("" if e > 0 else "^-1") for i, j, e in self.letters)

    def __repr__(self) -> str:
        return f"PureBraid({self.format()})"


def artin_act(b: PureBraid, w: Word) -> Word:
    if w.max_generator() > b.n:
        raise ValueError("word uses a generator beyond the strand count")
    for i, j, e in b.letters:
        w = w.substitute(generator_images(b.n, i, j, e))
    return w


def full_twist(I: Iterable[int], n: int) -> PureBraid:
    """A_I = prod_{i in I, ascending} prod_{j in I, j < i, ascending} A_{j,i}."""
    idx = sorted(set(I))
    if len(idx) < 2:
        raise ValueError("a full twist needs at least two strands")
    if idx[0] < 1 or idx[-1] > n:
        raise ValueError("strand index out of range")
    return PureBraid(n, tuple((j, i, 1) for a, i in enumerate(idx) for j in idx[:a]))


def conjugated_twist(I: Iterable[int], delta: PureBraid) -> PureBraid:
    return full_twist(I, delta.n).conjugate(delta)


def vertex_conjugator(v: Vertex, n: int) -> PureBraid:
    """delta_k = prod_{i in I_k} prod_{j in J_k} A_{j,i}, keeping j < i."""
    return PureBraid(n, tuple((j, i, 1) for i in v.wires for j in v.J if j < i))


def braid_monodromy(wd: WiringDiagram) -> list[PureBraid]:
    wd.validate()
    return [conjugated_twist(v.wires, vertex_conjugator(v, wd.n)) for v in wd.vertices]


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    """A meridian generator: ``kind`` is "wire" or "fiber"; ``line`` is the
    arrangement label it encircles."""

    name: str
    kind: str
    line: str


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    kind: str  # "monodromy" or "fibered"
    monodromy: tuple[PureBraid, ...] = field(default=())
    n_wires: int = 0

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def exponent_sums_vanish(self) -> bool:
        return all(not any(r.exponent_sums(self.ngens)) for r in self.relators)

    def lines(self) -> tuple[str, ...]:
        return tuple(g.line for g in self.generators)

    def format_text(self) -> str:
        names = [g.name for g in self.generators]
        out = [f"kind: {self.kind}",
               "generators: " + ", ".join(f"{g.name}={g.line}" for g in self.generators),
               f"relators ({len(self.relators)}):"]
        out += ["  " + r.format(names) for r in self.relators]
        return "\n".join(out)

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "generators": [{"name": g.name, "kind": g.kind, "line": g.line} for g in self.generators],
                "relators": [r.to_json() for r in self.relators],
                "monodromy": [[list(l) for l in b.letters] for b in self.monodromy]}


def monodromy_presentation(alphas: Sequence[PureBraid], flats: Sequence[Sequence[int]],
                           labels: Sequence[str] | None = None) -> GroupPresentation:
    """Relators alpha_k(x_i) x_i^-1 for i in I_k other than max I_k."""
    if len(alphas) != len(flats):
        raise ValueError("one monodromy braid per vertex required")
    if not alphas:
        n = len(labels) if labels else 0
    else:
        n = alphas[0].n
    if labels is None:
        labels = [str(i) for i in range(1, n + 1)]
    if len(labels) != n:
        raise ValueError("label count differs from the strand count")
    rels = []
    for a, I in zip(alphas, flats):
        if a.n != n:
            raise ValueError("monodromy braids on different strand counts")
        for i in sorted(I)[:-1]:
            x = Word.gen(i)
            rels.append(artin_act(a, x) * x.inverse())
    gens = tuple(Generator(f"x{i}", "wire", labels[i - 1]) for i in range(1, n + 1))
    return GroupPresentation(gens, tuple(rels), "monodromy", tuple(alphas), n)


def presentation_from_wiring(arr: Arrangement, direction: Sequence) -> GroupPresentation:
    """Braid monodromy presentation of a real affine line arrangement."""
    wd = wiring_diagram(arr, direction)
    alphas = braid_monodromy(wd)
    labels = [arr.labels[i] for i in wd.wire_lines]
    return monodromy_presentation(alphas, wd.flats, labels)


@dataclass(frozen=True)
class FiberData:
    """Split of an affine arrangement into wires and fibers of a projection.

    ``wires`` and ``fibers`` hold arrangement indices: wires bottom to top at
    the basepoint, fibers in order of decreasing projection value.
    """

    wires: tuple[int, ...]
    fibers: tuple[int, ...]
    fiber_values: tuple
    wiring: WiringDiagram
    monodromy: tuple[PureBraid, ...]  # one braid per fiber


def missing_fibers(arr: Arrangement, direction: Sequence) -> list:
    """Projection values of wire crossings that lie on no fiber line."""
    p = tuple(to_fraction(x) for x in direction)
    fiber_vals = set()
    wires = []
    for i, f in enumerate(arr.forms):
        if f[0] * p[1] == f[1] * p[0]:
            fiber_vals.add(_fiber_value(f, p))
        else:
            wires.append(i)
    if len(wires) < 2:
        return []
    sub = arr.restrict(wires)
    from .arrangement import intersection_data, _meet2

    out = set()
    for flat in intersection_data(sub).flats:
        x, y = _meet2(sub.forms[flat[0]], sub.forms[flat[1]])
        v = p[0] * x + p[1] * y
        if v not in fiber_vals:
            out.add(v)
    return sorted(out, reverse=True)


def _fiber_value(form, p):
    # the line alpha x + beta y + gamma = 0 with (alpha, beta) = c * p is {p = -gamma / c}
    c = form[0] / p[0] if p[0] != 0 else form[1] / p[1]
    return -form[2] / c


def fiber_data(arr: Arrangement, direction: Sequence) -> FiberData:
    if arr.ambient_dim != 2:
        raise ArrangementError("fibered presentations need an affine arrangement in the plane")
    p = tuple(to_fraction(x) for x in direction)
    missing = missing_fibers(arr, p)
    if missing:
        raise ArrangementError(
            f"arrangement is not linearly fibered over {p}: no fiber line at projection values {missing}")
    wires, fibers = [], []
    for i, f in enumerate(arr.forms):
        if f[0] * p[1] == f[1] * p[0]:
            fibers.append(i)
        else:
            wires.append(i)
    vals = {i: _fiber_value(arr.forms[i], p) for i in fibers}
    fibers.sort(key=lambda i: vals[i], reverse=True)
    sub = arr.restrict(wires)
    # within a fiber, the lowest crossing comes first
    wd = wiring_diagram(sub, p, tiebreak=(p[1], -p[0]))
    alphas = braid_monodromy(wd) if wd.vertices else []
    n = len(wires)
    per_fiber = []
    for i in fibers:
        b = PureBraid(n)
        for v, a in zip(wd.vertices, alphas):
            if v.position == vals[i]:
                b = b * a
        per_fiber.append(b)
    wire_idx = tuple(wires[k] for k in wd.wire_lines)
    return FiberData(wire_idx, tuple(fibers), tuple(vals[i] for i in fibers), wd, tuple(per_fiber))


def fibered_presentation(arr: Arrangement, direction: Sequence) -> GroupPresentation:
    """Semidirect product presentation with relators y_j^-1 x_i y_j abar_j(x_i)^-1.

    Wires get generators x_1..x_n (bottom to top), fibers y_1..y_r in order
    of decreasing projection value; in words, y_j is generator n + j.
    """
    fd = fiber_data(arr, direction)
    n = len(fd.wires)
    rels = []
    for j, abar in enumerate(fd.monodromy, start=1):
        y = Word.gen(n + j)
        imgs = abar.images() if n else ()
        for i in range(1, n + 1):
            rels.append(Word.gen(i).conjugate(y) * imgs[i - 1].inverse())
    gens = tuple(Generator(f"x{k + 1}", "wire", arr.labels[w]) for k, w in enumerate(fd.wires))
    gens += tuple(Generator(f"y{k + 1}", "fiber", arr.labels[f]) for k, f in enumerate(fd.fibers))
    return GroupPresentation(gens, tuple(rels), "fibered", fd.monodromy, n)


def presentation_json(P: GroupPresentation) -> str:
    return json.dumps(P.to_json(), indent=1)
