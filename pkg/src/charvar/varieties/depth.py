"""Depth of characters and certification of cosets in V_d.

Characters of a central arrangement are handled through a decone: the
chosen hyperplane is sent to infinity, its coordinate is dropped, and the
rest are read against the Alexander matrix of the affine complement.  For
t != 1 the depth is (m - 1) - rank A(t) with m the generator count; the
identity has depth n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..alexander import alexander_matrix, block_alexander
from ..arrangement import Arrangement, Decone, decone, suggest_direction
from ..braidgroup import GroupPresentation, fibered_presentation, presentation_from_wiring
from ..symbolic import LaurentMatrix, MonomialUnit, rank_finite_field, rank_fraction_free
from .torus import Character, TorusCoset


class CharacterError(ValueError):
    """A character that cannot be evaluated on the arrangement."""


@dataclass
class CharModel:
    """A central arrangement with a chosen decone and presentation.

    ``columns[g]`` is the central index of the hyperplane whose meridian is
    generator g + 1 of the presentation.
    """

    arrangement: Arrangement
    decone: Decone
    direction: tuple
    presentation: GroupPresentation
    columns: tuple[int, ...]
    block: bool = False

    @cached_property
    def matrix(self) -> LaurentMatrix:
        if self.block:
            return block_alexander(self.presentation)
        return alexander_matrix(self.presentation)

    @property
    def n(self) -> int:
        return self.arrangement.n

    @property
    def ngens(self) -> int:
        return self.presentation.ngens

    def restrict(self, t: Character) -> list[Fraction]:
        return [t.q[c] for c in self.columns]


def build_model(arr: Arrangement, decone_at: int | None = None, direction: Sequence | None = None,
                fibered: bool = False, block: bool = False) -> CharModel:
    if not (arr.ambient_dim == 3 and arr.central):
        raise CharacterError("characteristic varieties are computed for central arrangements; cone first")
    h = arr.n - 1 if decone_at is None else decone_at
    dc = decone(arr, h)
    if direction is None:
        direction = suggest_direction(dc.affine)
    direction = tuple(Fraction(x) for x in direction)
    if fibered:
        P = fibered_presentation(dc.affine, direction)
    else:
        P = presentation_from_wiring(dc.affine, direction)
    label_to_central = {arr.labels[i]: i for i in range(arr.n)}
    columns = tuple(label_to_central[g.line] for g in P.generators)
    return CharModel(arr, dc, direction, P, columns, block and fibered)


def _check(model: CharModel, t: Character) -> None:
    if t.n != model.n:
        raise CharacterError(f"character has {t.n} coordinates, arrangement has {model.n} hyperplanes")
    if not t.product_condition():
        raise CharacterError("character violates t_1 ... t_n = 1")


def depth(model: CharModel, t: Character) -> int:
    _check(model, t)
    if t.is_identity():
        return model.n
    values = [MonomialUnit.constant(q) for q in model.restrict(t)]
    M = model.matrix.substitute(values)
    return (model.ngens - 1) - rank_fraction_free(M)


def membership(model: CharModel, t: Character, d: int) -> bool:
    return depth(model, t) >= d


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    holds: bool
    d: int
    rank: int
    generic_depth: int
    ngens: int
    parametrization: str
    method: str = "fraction-free"

    def to_json(self) -> dict:
        return {"holds": self.holds, "d": self.d, "rank": self.rank,
                "generic_depth": self.generic_depth, "generators": self.ngens,
                "parametrization": self.parametrization, "method": self.method}


def product_subtorus(n: int) -> TorusCoset:
    return TorusCoset.from_lattice(n, [[1] * n])


def coset_matrix(model: CharModel, K: TorusCoset) -> LaurentMatrix:
    if K.n != model.n:
        raise CharacterError("coset and arrangement sizes differ")
    if not product_subtorus(model.n).contains(K):
        raise CharacterError("coset leaves the subtorus t_1 ... t_n = 1")
    params = [f"s{j + 1}" for j in range(K.dim)]
    units = K.parametrization()
    return model.matrix.substitute([units[c] for c in model.columns], params)


def generic_depth(model: CharModel, K: TorusCoset, exact: bool = True, seed: int = 0,
                  p: int | None = None, trials: int = 5) -> int:
    """Depth at a generic point of K.

    With ``exact`` the rank comes from fraction-free elimination over the
    parameter ring; otherwise from random evaluations modulo a prime, which
    can only overestimate the depth (and does so with small probability).
    """
    if K.dim == 0:
        return depth(model, K.translate)
    M = coset_matrix(model, K)
    if exact:
        r = rank_fraction_free(M)
    else:
        r = rank_finite_field(M, p=p, seed=seed, trials=trials)
    return (model.ngens - 1) - r


def certify_coset(model: CharModel, K: TorusCoset, d: int) -> Certificate:
    """K lies in V_d iff the Alexander matrix restricted to K has rank at
    most (m - 1 - d) over the fraction field of the parameter ring."""
    if K.dim == 0:
        dep = depth(model, K.translate)
        rank = (model.ngens - 1) - dep if not K.translate.is_identity() else 0
        return Certificate(dep >= d, d, rank, dep, model.ngens, str(K.translate))
    M = coset_matrix(model, K)
    r = rank_fraction_free(M)
    gd = (model.ngens - 1) - r
    return Certificate(gd >= d, d, r, gd, model.ngens, K.format_parametrization())


def quick_reject(model: CharModel, K: TorusCoset, d: int, seed: int = 0, trials: int = 2) -> bool:
    """True when K is certainly not inside V_d.

    A full-enough rank after reducing modulo p at random parameter values
    bounds the generic rank from below, so rejection is exact.
    """
    if K.dim == 0:
        return depth(model, K.translate) < d
    M = coset_matrix(model, K)
    r = rank_finite_field(M, seed=seed, trials=trials)
    return (model.ngens - 1) - r < d


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointReport:
    character: Character
    depth: int
    claimed: int | None

    @property
    def confirmed(self) -> bool:
        return self.claimed is None or self.depth >= self.claimed

    def to_json(self) -> dict:
        return {"character": self.character.to_json(), "depth": self.depth,
                "claimed": self.claimed, "confirmed": self.confirmed}


def verify_point(model: CharModel, t: Character, claim: int | None = None) -> PointReport:
    return PointReport(t, depth(model, t), claim)


def subgroup_closure(generators: Sequence[Character], n: int, budget: int) -> list[Character]:
    """The finite subgroup generated by the given torsion characters."""
    elems = {Character.identity(n)}
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for g in generators:
                b = a * g
                if b not in elems:
                    elems.add(b)
                    new.append(b)
                    if len(elems) > budget:
                        from .resonance import BudgetExceeded
                        raise BudgetExceeded(f"search set exceeds {budget} characters")
        frontier = new
    return sorted(elems, key=lambda c: c.q)


def scan_points(model: CharModel, generators: Sequence[Character] = (), order: int | None = None,
                cosets: Sequence[TorusCoset] = (), d: int = 1, budget: int = 10 ** 5) -> list[Character]:
    """Characters of depth >= d among the subgroup generated by
    ``generators`` together with all points of order dividing ``order`` on
    the given cosets."""
    n = model.n
    pts = set(subgroup_closure(list(generators), n, budget)) if generators else set()
    if order is not None:
        for K in cosets:
            for p in K.torsion_points(order):
                pts.add(p)
                if len(pts) > budget:
                    from .resonance import BudgetExceeded
                    raise BudgetExceeded(f"search set exceeds {budget} characters")
    out = []
    for t in sorted(pts, key=lambda c: c.q):
        if t.product_condition() and depth(model, t) >= d:
            out.append(t)
    return out
