"""Pattern-driven search for translated components of V_1.

A known translated coset of a reference arrangement (by default the deleted
B3 coset) is pulled back along every embedding of the reference flats into
the target: coordinates outside the image are set to 1.  Each pullback is
then retranslated by torsion characters supported on the image and kept if
it certifies inside V_1 and is not swallowed by a component through 1.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..arrangement import IntersectionData, find_embeddings, intersection_data
from .depth import CharModel, Certificate, certify_coset, product_subtorus, quick_reject
from .resonance import BudgetExceeded, resonance_components
from .torus import Character, TorusCoset, exp_coset


@dataclass(frozen=True)
class Pattern:
    """Flats of a reference arrangement together with translated cosets of
    its V_1 (in the reference's own coordinates)."""

    name: str
    flats: IntersectionData
    cosets: tuple[TorusCoset, ...]


@dataclass(frozen=True)
class TranslatedComponent:
    coset: TorusCoset
    support: tuple[int, ...]
    pattern: str
    certificate: Certificate

    def to_json(self) -> dict:
        return {"pattern": self.pattern, "support": [i + 1 for i in self.support],
                "dim": self.coset.dim, "translate_order": self.coset.translate_order(),
                "parametrization": self.coset.format_parametrization(),
                "coset": self.coset.to_json(), "certificate": self.certificate.to_json()}


def pullback(K: TorusCoset, phi: Sequence[int], n: int) -> TorusCoset:
    """Coset of (C^*)^n equal to K on the image of phi and 1 elsewhere."""
    image = set(phi)
    rows = [[int(j == i) for j in range(n)] for i in range(n) if i not in image]
    for r in K.lattice:
        row = [0] * n
        for a, v in enumerate(r):
            row[phi[a]] = v
        rows.append(row)
    q = [Fraction(0)] * n
    for a, x in enumerate(K.translate.q):
        q[phi[a]] = x
    return TorusCoset.from_lattice(n, rows, q)


def retranslations(support: Sequence[int], n: int, max_order: int, budget: int) -> list[Character]:
    """Characters supported on ``support`` with every coordinate of order
    at most ``max_order`` and t_1 ... t_n = 1."""
    steps = sorted({Fraction(a, k) for k in range(1, max_order + 1) for a in range(k)})
    total = len(steps) ** len(support)
    if total > budget:
        raise BudgetExceeded(f"{total} retranslations exceed the budget of {budget}")
    out = []
    for vals in product(steps, repeat=len(support)):
        if sum(vals) % 1:
            continue
        q = [Fraction(0)] * n
        for i, v in zip(support, vals):
            q[i] = v
        out.append(Character(tuple(q)))
    return out


def search_translated(model: CharModel, patterns: Sequence[Pattern], max_order: int = 2,
                      through_one: Sequence[TorusCoset] | None = None, budget: int = 10 ** 5,
                      seed: int = 0, workers: int = 1) -> list[TranslatedComponent]:
    """Certified translated cosets of V_1(model) coming from the patterns.

    ``through_one`` lists the components through 1 used for the
    non-containment check; by default they are the exponentials of the
    resonance components.  With ``workers`` > 1 candidates are certified in
    a process pool; results come back in candidate order either way.
    """
    n = model.n
    data = intersection_data(model.arrangement)
    if through_one is None:
        through_one = [exp_coset(c.basis, n=n) for c in resonance_components(data, seed=seed)]
    hyper = product_subtorus(n)
    candidates: dict[TorusCoset, tuple[str, tuple[int, ...]]] = {}
    for pat in patterns:
        for phi in find_embeddings(data, pat.flats):
            support = tuple(sorted(phi))
            for K in pat.cosets:
                base = pullback(K, phi, n)
                for eps in retranslations(support, n, max_order, budget):
                    cand = base * eps
                    if cand not in candidates and hyper.contains(cand):
                        candidates[cand] = (pat.name, support)
    todo = [c for c in sorted(candidates, key=TorusCoset.sort_key)
            if not any(E.contains(c) for E in through_one)]
    jobs = [(model, c, seed) for c in todo]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(_check_candidate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        certs = [_check_candidate(j) for j in jobs]
    return [TranslatedComponent(c, c.support(), candidates[c][0], cert)
            for c, cert in zip(todo, certs) if cert is not None and cert.holds]


def _check_candidate(job) -> Certificate | None:
    model, cand, seed = job
    if quick_reject(model, cand, 1, seed=seed):
        return None
    return certify_coset(model, cand, 1)
