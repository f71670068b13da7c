"""Components of the first resonance variety from the intersection data.

Local components come from flats of size >= 3.  Non-local components come
from neighborly partitions of sub-arrangements: every candidate subspace C_P
of dimension >= 2 is replaced by ker(lambda ^ -) for a nonzero lambda in it,
which is exactly the component of R_1 containing lambda.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from ..alexander import OSAlgebra, os_algebra, resonance_depth
from ..arrangement import IntersectionData, intersection_data
from ..symbolic import nullspace_q, rank_q, row_reduce


class BudgetExceeded(RuntimeError):
    """Raised when a search exceeds its node budget; carries partial results."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class ResonanceComponent:
    """A linear component of R_1, given by a reduced rational basis.

    ``kind`` is "local" (flat) or "partition"; ``label`` names the flat or the
    partition in 1-based hyperplane numbers, e.g. ``(16|25|34)``.
    """

    support: tuple[int, ...]
    kind: str
    label: str
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return len(self.basis[0])

    def contains(self, lam: Sequence) -> bool:
        rows = [list(b) for b in self.basis]
        return rank_q(rows + [list(lam)], self.n) == self.dim

    def sample(self, rng: random.Random, bound: int = 5) -> tuple[Fraction, ...]:
        """A random nonzero integer combination of the basis."""
        while True:
            coeffs = [rng.randint(-bound, bound) for _ in self.basis]
            if any(coeffs):
                v = tuple(sum(c * b[i] for c, b in zip(coeffs, self.basis)) for i in range(self.n))
                if any(v):
                    return v

    def to_json(self) -> dict:
        return {"kind": self.kind, "label": self.label, "dim": self.dim,
                "support": [i + 1 for i in self.support],
                "basis": [[str(x) for x in b] for b in self.basis]}


def _reduced(vectors: Sequence[Sequence], n: int) -> tuple[tuple[Fraction, ...], ...]:
    red, _ = row_reduce(vectors, n)
    return tuple(tuple(r) for r in red)


def _data(arr) -> IntersectionData:
    return arr if isinstance(arr, IntersectionData) else intersection_data(arr)


def flat_label(flat: Iterable[int]) -> str:
    items = [i + 1 for i in flat]
    sep = "" if max(items) < 10 else ","
    return sep.join(map(str, items))


def partition_label(blocks: Sequence[Sequence[int]]) -> str:
    return "(" + "|".join(flat_label(b) for b in blocks) + ")"


def local_components(arr) -> list[ResonanceComponent]:
    data = _data(arr)
    out = []
    for f in data.flats:
        if len(f) >= 3:
            basis = []
            for i in f[1:]:
                v = [Fraction(0)] * data.n
                v[f[0]] = Fraction(-1)
                v[i] = Fraction(1)
                basis.append(v)
            out.append(ResonanceComponent(tuple(f), "local", flat_label(f), _reduced(basis, data.n)))
    return out


def neighborly_partitions(arr, support: Sequence[int] | None = None, blocks: int = 3,
                          budget: list[int] | None = None) -> list[tuple[tuple[int, ...], ...]]:
    """Neighborly partitions of the sub-arrangement on ``support`` into
    exactly ``blocks`` nonempty blocks.

    A flat meeting a block in all but at most one element lies inside it, so
    the two lines of a double point share a block and a triple point is
    either inside one block or split across three.  ``budget`` is a one-item
    list holding the remaining node allowance.
    """
    data = _data(arr)
    S = sorted(range(data.n) if support is None else support)
    Sset = set(S)
    flats = [tuple(v for v in f if v in Sset) for f in data.flats]
    flats = [f for f in flats if len(f) >= 2]
    # union-find over forced merges (double points of the sub-arrangement)
    parent = {v: v for v in S}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in flats:
        if len(f) == 2:
            a, b = find(f[0]), find(f[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in S:
        groups.setdefault(find(v), []).append(v)
    units = sorted(groups.values())
    if len(units) < blocks:
        return []
    unit_of = {v: k for k, g in enumerate(units) for v in g}
    multi = [tuple(unit_of[v] for v in f) for f in flats if len(f) >= 3]
    assign = [-1] * len(units)
    out = []

    def consistent() -> bool:
        for f in multi:
            size = len(f)
            counts: dict[int, int] = {}
            unassigned = 0
            for u in f:
                b = assign[u]
                if b < 0:
                    unassigned += 1
                else:
                    counts[b] = counts.get(b, 0) + 1
            # every complete flat must satisfy the neighborly rule
            if unassigned == 0:
                for c in counts.values():
                    if c >= size - 1 and c != size:
                        return False
            else:
                # a block already holding size - 1 members forces the rest
                for c in counts.values():
                    if c >= size - 1 and len(counts) > 1:
                        return False
        return True

    def rec(k: int, used: int):
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("partition search budget exceeded")
        if k == len(units):
            if used == blocks:
                part = [[] for _ in range(blocks)]
                for u, b in enumerate(assign):
                    part[b].extend(units[u])
                out.append(tuple(tuple(sorted(p)) for p in part))
            return
        if blocks - used > len(units) - k:
            return
        # canonical block numbering: a new block only gets the next index
        for b in range(min(used + 1, blocks)):
            assign[k] = b
            if consistent():
                rec(k + 1, max(used, b + 1))
            assign[k] = -1

    rec(0, 0)
    return out


def partition_subspace(arr, partition: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of C_P: lambda supported on the partition's union, total sum 0,
    and sum over I of lambda = 0 for every flat I of the sub-arrangement not
    inside a single block."""
    data = _data(arr)
    n = data.n
    S = sorted(v for b in partition for v in b)
    Sset = set(S)
    block_of = {v: k for k, b in enumerate(partition) for v in b}
    eqs = []
    for i in range(n):
        if i not in Sset:
            eqs.append([Fraction(int(j == i)) for j in range(n)])
    eqs.append([Fraction(int(j in Sset)) for j in range(n)])
    for f in data.flats:
        g = [v for v in f if v in Sset]
        if len(g) >= 2 and len({block_of[v] for v in g}) > 1:
            eqs.append([Fraction(int(j in g)) for j in range(n)])
    return nullspace_q(eqs, n)


def partition_component(arr, partition: Sequence[Sequence[int]]) -> ResonanceComponent | None:
    data = _data(arr)
    basis = partition_subspace(data, partition)
    if len(basis) < 2:
        return None
    S = tuple(sorted(v for b in partition for v in b))
    return ResonanceComponent(S, "partition", partition_label(partition), _reduced(basis, data.n))


def kernel_component(os: OSAlgebra, lam: Sequence) -> list[list[Fraction]]:
    return nullspace_q(os.multiplication_matrix(lam), os.n)


def resonance_components(arr, d: int = 1, min_support: int = 6, budget: int = 10 ** 6,
                         seed: int = 0) -> list[ResonanceComponent]:
    """All components of R_1 with dim >= d + 1.

    Local components come first (by flat), then non-local ones in order of
    support and label.  Each non-local component is the kernel of
    lambda ^ - at a point of a neighborly-partition subspace; its recorded
    label is the first partition (in enumeration order) that produced it.
    """
    data = _data(arr)
    os = os_algebra(data)
    n = data.n
    rng = random.Random(seed)
    comps = local_components(data)
    found: list[ResonanceComponent] = list(comps)
    allowance = [budget]
    nonlocal_found: list[ResonanceComponent] = []
    try:
        for size in range(min_support, n + 1):
            for S in combinations(range(n), size):
                for part in neighborly_partitions(data, S, 3, allowance):
                    basis = partition_subspace(data, part)
                    if len(basis) < 2:
                        continue
                    cand = ResonanceComponent(S, "partition", partition_label(part), _reduced(basis, n))
                    lam = cand.sample(rng)
                    if any(c.contains(lam) for c in found):
                        continue
                    ker = kernel_component(os, lam)
                    if len(ker) < 2:
                        continue
                    red = _reduced(ker, n)
                    supp = tuple(i for i in range(n) if any(b[i] for b in red))
                    comp = ResonanceComponent(supp, "partition", partition_label(part), red)
                    found.append(comp)
                    nonlocal_found.append(comp)
    except BudgetExceeded as exc:
        exc.partial = _finish(comps, nonlocal_found, d)
        raise
    return _finish(comps, nonlocal_found, d)


def _finish(local, nonlocal_, d):
    nonlocal_ = sorted(nonlocal_, key=lambda c: (c.support, c.basis))
    return [c for c in list(local) + nonlocal_ if c.dim >= d + 1]


def verify_component(arr, comp: ResonanceComponent, samples: int = 3, seed: int = 0) -> bool:
    """resonance_depth >= dim - 1 at random points of the component."""
    os = os_algebra(_data(arr))
    rng = random.Random(seed)
    return all(resonance_depth(os, comp.sample(rng)) >= comp.dim - 1 for _ in range(samples))
