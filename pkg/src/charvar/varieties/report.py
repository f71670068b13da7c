"""Intersection poset of a list of components of V_1."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .depth import CharModel, depth, generic_depth
from .resonance import ResonanceComponent
from .torus import Character, TorusCoset, coset_intersect, exp_coset


@dataclass(frozen=True)
class Component:
    """A named coset in the report; ``provenance`` says where it came from
    (e.g. "local", "partition", "translated", "point")."""

    name: str
    coset: TorusCoset
    provenance: str


def resonance_cosets(comps: Sequence[ResonanceComponent]) -> list[Component]:
    """exp of resonance components, named by their flat or partition label."""
    return [Component(c.label, exp_coset(c.basis), c.kind) for c in comps]


def point_components(points: Sequence[tuple[str, Character]]) -> list[Component]:
    return [Component(name, TorusCoset.point(t), "point") for name, t in points]


@dataclass
class PosetReport:
    n: int
    nodes: list[dict] = field(default_factory=list)
    edges: list[dict] = field(default_factory=list)
    totals: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"n": self.n, "nodes": self.nodes, "edges": self.edges, "totals": self.totals}

    def format_text(self) -> str:
        out = [f"components: {self.totals.get('components', 0)}"]
        for k, v in self.totals.get("by_provenance", {}).items():
            out.append(f"  {k}: {v}")
        out.append("nodes:")
        for nd in self.nodes:
            ess = "essential" if nd["essential"] else "non-essential"
            out.append(f"  {nd['id']}: dim {nd['dim']}, depth {nd['depth']}, {ess}, {nd['provenance']}"
                       f"  {nd['parametrization']}")
        out.append("intersections:")
        if not self.edges:
            out.append("  none besides 1")
        for e in self.edges:
            where = e["parametrization"]
            out.append(f"  {' '.join(e['members'])} meet at {where} (dim {e['dim']}, depth {e['depth']})")
        return "\n".join(out)


def char_poset_report(model: CharModel, components: Sequence[Component],
                      generic: str = "exact") -> PosetReport:
    """Nodes with dim, generic depth and essentiality, and every proper
    intersection (other than the identity) with the set of all components
    containing it.

    ``generic`` selects how generic depths are computed: "exact" uses
    fraction-free elimination, "modp" random evaluations modulo a prime.
    """
    rep = PosetReport(model.n)
    for c in components:
        K = c.coset
        if K.dim == 0:
            d = depth(model, K.translate)
        else:
            d = generic_depth(model, K, exact=(generic == "exact"))
        rep.nodes.append({"id": c.name, "dim": K.dim, "depth": d, "essential": K.is_essential(),
                          "provenance": c.provenance, "parametrization": K.format_parametrization(),
                          "coset": K.to_json()})
    # every intersection coset, then the full member list of each
    pieces: set[TorusCoset] = set()
    for a, b in combinations(components, 2):
        for P in coset_intersect(a.coset, b.coset):
            if P.dim == 0 and P.translate.is_identity():
                continue
            pieces.add(P)
    for P in sorted(pieces, key=lambda K: (-K.dim, K.sort_key())):
        members = [c.name for c in components if c.coset.contains(P)]
        if len(members) < 2:
            continue
        # skip pieces that are whole components themselves
        if any(c.coset == P for c in components):
            continue
        if P.dim == 0:
            d = depth(model, P.translate)
        else:
            d = generic_depth(model, P, exact=(generic == "exact"))
        rep.edges.append({"members": members, "dim": P.dim, "depth": d,
                          "point": P.translate.to_json() if P.dim == 0 else None,
                          "parametrization": P.format_parametrization()})
    by_prov: dict[str, int] = {}
    for c in components:
        by_prov[c.provenance] = by_prov.get(c.provenance, 0) + 1
    points = [e for e in rep.edges if e["dim"] == 0]
    rep.totals = {"components": len(components), "by_provenance": by_prov,
                  "intersection_points": len(points),
                  "depth_at_least_2_points": sum(1 for e in points if e["depth"] >= 2)}
    return rep
