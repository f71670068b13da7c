"""End-to-end runs of the shipped examples against their stored expectations."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .alexander import os_algebra, resonance_depth
from .arrangement import intersection_data
from .catalog import deleted_b3_pattern, load_arrangement, load_coset, model_from, reference_matrix
from .symbolic import LaurentMatrix, rank_fraction_free
from .varieties.depth import certify_coset, depth, scan_points
from .varieties.report import Component, char_poset_report, point_components, resonance_cosets
from .varieties.resonance import resonance_components
from .varieties.torus import Character, TorusCoset, coset_intersect, exp_coset
from .varieties.translated import search_translated

EXAMPLES = {
    "a3": ("a3",),
    "nonfano": ("non-fano",),
    "b3": ("b3",),
    "deleted-b3": ("deleted-b3",),
    "grunbaum": ("grunbaum",),
    "falk": ("falk-f1", "falk-f2"),
    "ziegler": ("ziegler-z1", "ziegler-z2"),
}


@dataclass
class Check:
    name: str
    ok: bool
    expected: object
    got: object
    source: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "expected": _plain(self.expected),
                "got": _plain(self.got), "source": self.source}


def _plain(x):
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass
class FixtureRun:
    fixture: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, expected, got, source="", ok=None):
        self.checks.append(Check(name, expected == got if ok is None else ok, expected, got, source))

    def to_json(self) -> dict:
        return {"fixture": self.fixture, "ok": self.ok, "seconds": round(self.seconds, 2),
                "checks": [c.to_json() for c in self.checks]}


@dataclass
class Bundle:
    example: str
    runs: list[FixtureRun]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.runs)

    def to_json(self) -> dict:
        return {"example": self.example, "ok": self.ok, "runs": [r.to_json() for r in self.runs]}

    def format_text(self) -> str:
        out = []
        for r in self.runs:
            out.append(f"{r.fixture} ({r.seconds:.1f} s)")
            for c in r.checks:
                mark = "ok  " if c.ok else "FAIL"
                line = f"  {mark} {c.name}: {_plain(c.got)}"
                if not c.ok:
                    line += f" (expected {_plain(c.expected)})"
                out.append(line)
        out.append("all checks passed" if self.ok else
                   "mismatches: " + ", ".join(f"{r.fixture}/{c.name}" for r in self.runs
                                              for c in r.checks if not c.ok))
        return "\n".join(out)


def reproduce(example: str, seed: int = 0, workers: int = 1, budget: int = 10 ** 6,
              scan_budget: int = 10 ** 5) -> Bundle:
    if example not in EXAMPLES:
        raise KeyError(f"unknown example {example!r}; choose from {', '.join(EXAMPLES)}")
    return Bundle(example, [run_fixture(f, seed, workers, budget, scan_budget) for f in EXAMPLES[example]])


def run_fixture(name: str, seed: int = 0, workers: int = 1, budget: int = 10 ** 6,
                scan_budget: int = 10 ** 5) -> FixtureRun:
    start = time.perf_counter()
    arr, data = load_arrangement(name)
    exp = data.get("expectations", {})
    run = FixtureRun(name)
    model = model_from(arr, data)
    comps = resonance_components(arr, budget=budget, seed=seed)
    by_label = {c.label: c for c in comps}
    translated = None

    if "resonance" in exp:
        e = exp["resonance"]
        src = e.get("source", "")
        run.add("resonance components", e["total"], len(comps), src)
        n_local = sum(c.kind == "local" for c in comps)
        if "local" in e:
            run.add("local components", e["local"], n_local, src)
        if "nonlocal" in e:
            run.add("non-local components", e["nonlocal"], len(comps) - n_local, src)
        if "flats" in e:
            run.add("local flats", set(e["flats"]), {c.label for c in comps if c.kind == "local"}, src)
        if "partitions" in e:
            run.add("partitions", set(e["partitions"]), {c.label for c in comps if c.kind != "local"}, src)
        for lab in e.get("partitions_contain", []):
            run.add(f"partition {lab} present", True, lab in by_label, src)

    for e in exp.get("cosets", []):
        K = load_coset(e["file"])
        cert = certify_coset(model, K, e["d"])
        src = e.get("source", "")
        run.add(f"{e['name']} in V_{e['d']}", e["holds"], cert.holds, src)
        if "generic_depth" in e:
            run.add(f"{e['name']} generic depth", e["generic_depth"], cert.generic_depth, src)
        if "rank" in e:
            run.add(f"{e['name']} witness rank", e["rank"], cert.rank, e.get("rank_source", src))

    for e in exp.get("points", []):
        t = Character.parse(e["char"])
        d = depth(model, t)
        if e.get("at_least"):
            run.add(f"depth({e['name']}) >= {e['depth']}", True, d >= e["depth"], e.get("source", ""))
        else:
            run.add(f"depth({e['name']})", e["depth"], d, e.get("source", ""))

    if "pairwise_meet_trivial" in exp:
        cosets = [c.coset for c in resonance_cosets(comps)]
        cosets += [load_coset(e["file"]) for e in exp.get("cosets", []) if e["holds"]]
        cosets = list(dict.fromkeys(cosets))
        one = TorusCoset.point(Character.identity(arr.n))
        trivial = all(coset_intersect(a, b) == [one] for a, b in combinations(cosets, 2))
        run.add("components meet only at 1", exp["pairwise_meet_trivial"]["value"], trivial,
                exp["pairwise_meet_trivial"].get("source", ""))

    if "v2_scan" in exp:
        gens = []
        for c in comps:
            gens.extend(exp_coset(c.basis).torsion_points(2))
        for e in exp.get("cosets", []):
            gens.extend(load_coset(e["file"]).torsion_points(2))
        gens = sorted(set(gens), key=lambda t: t.q)
        hits = scan_points(model, gens, d=2, budget=scan_budget)
        names = ["identity" if t.is_identity() else str(t) for t in hits]
        run.add("V_2 scan over two-torsion", exp["v2_scan"]["result"], names, exp["v2_scan"].get("source", ""))

    if "triple_meet" in exp:
        e = exp["triple_meet"]
        pieces = [exp_coset(by_label[lab].basis) for lab in e["members"]]
        acc = [pieces[0]]
        for K in pieces[1:]:
            acc = [P for A in acc for P in coset_intersect(A, K)]
        named = {Character.parse(p["char"]): p["name"] for p in exp.get("points", [])}
        got = sorted("identity" if P.translate.is_identity() else named.get(P.translate, str(P.translate))
                     for P in acc if P.dim == 0)
        if any(P.dim for P in acc):
            got.append("positive-dimensional piece")
        run.add(" ∩ ".join(e["members"]), sorted(e["points"]), got, e.get("source", ""))

    if "section" in exp:
        e = exp["section"]
        K = load_coset(e["coset"])
        k = e["coordinate"] - 1
        row = [int(j == k) for j in range(arr.n)]
        pieces = coset_intersect(K, TorusCoset.from_lattice(arr.n, [row]))
        run.add(f"pieces of the section t_{k + 1} = 1", e["pieces"], len(pieces), e.get("source", ""))
        target = load_coset(e["matches"])
        deleted = [delete_coordinate(P, k) for P in pieces]
        run.add(f"a piece equals {e['matches']} after deleting t_{k + 1}", True, target in deleted,
                e.get("source", ""))
        dmodel = model_from(*load_arrangement(e["deleted"]))
        run.add("deleted arrangement flats match", True,
                intersection_data(arr.restrict([j for j in range(arr.n) if j != k])).flats
                == intersection_data(dmodel.arrangement).flats, "derived")

    if "resonance_shift" in exp:
        e = exp["resonance_shift"]
        os = os_algebra(intersection_data(arr))
        lam = [Fraction(x) for x in e["lambda"]]
        rng = random.Random(seed)
        depths = {resonance_depth(os, [x + rng.randint(-10, 10) for x in lam]) for _ in range(e["shifts"])}
        depths.add(resonance_depth(os, lam))
        run.add(f"resonance depth at lambda + N ({e['shifts']} shifts)", {e["resonance_depth"]}, depths,
                e.get("source", ""))

    if "block_matrix" in exp:
        e = exp["block_matrix"]
        fmodel = model_from(arr, data, fibered=True, block=True)
        B = fmodel.matrix
        run.add("block matrix shape", [e["rows"], e["cols"]], [len(B.rows), B.ncols], e.get("source", ""))
        run.add("block matrix rank", e["rank"], rank_fraction_free(B), e.get("source", ""))
        for name_, ok in compare_reference(B).items():
            run.add(name_, True, ok, e.get("source", ""))

    if "translated" in exp or "components" in exp:
        translated = search_translated(model, [deleted_b3_pattern()], max_order=2, seed=seed, workers=workers)
    if "translated" in exp:
        e = exp["translated"]
        src = e.get("source", "")
        run.add("translated components", e["count"], len(translated), src)
        if "supports" in e:
            run.add("translated supports", sorted(map(tuple, e["supports"])),
                    sorted(tuple(i + 1 for i in c.support) for c in translated), src)
        run.add("translated dim 1, translate order 2", True,
                all(c.coset.dim == 1 and c.coset.translate_order() == 2 for c in translated), "derived")
    if "components" in exp:
        run.add("certified candidate components", exp["components"]["total"], len(comps) + len(translated),
                exp["components"].get("source", ""))

    if "report" in exp:
        e = exp["report"]
        parts = resonance_cosets(comps)
        for x in e.get("extra", []):
            if "char" in x:
                parts += point_components([(x["name"], Character.parse(x["char"]))])
            else:
                K = load_coset(x["file"] if "file" in x else x["inline"])
                parts.append(Component(x["name"], K, x.get("provenance", "translated")))
        rep = char_poset_report(model, parts)
        src = e.get("source", "")
        run.add("report components", e["total"], rep.totals["components"], src)
        for m in e.get("meets", []):
            t = Character.parse(m["point"])
            found = [ed["members"] for ed in rep.edges if ed["dim"] == 0 and Character.parse(
                ",".join(ed["point"])) == t]
            run.add(f"members meeting at {t}", sorted(m["members"]), sorted(found[0]) if found else None, src)
        if "depth2_points" in e:
            run.add("depth >= 2 intersection points", e["depth2_points"],
                    rep.totals["depth_at_least_2_points"], src)

    run.seconds = time.perf_counter() - start
    return run


def delete_coordinate(K: TorusCoset, k: int) -> TorusCoset:
    """Image of a coset lying in {t_k = 1} under deletion of coordinate k."""
    B = [list(r) for i, r in enumerate(K.exponents) if i != k]
    q = [x for i, x in enumerate(K.translate.q) if i != k]
    if K.dim == 0:
        return TorusCoset.point(Character(tuple(q)))
    return TorusCoset.from_exponents(B, q)


def compare_reference(B: LaurentMatrix) -> dict[str, bool]:
    """Compare a computed block matrix with the bundled reference matrix.

    Rows listed as exact must agree entrywise after the recorded row order;
    every fiber block must span the same row space; total ranks agree.
    """
    ref, data = reference_matrix()
    order = [i - 1 for i in data["row_order"]]
    out = {}
    for i in data["exact_rows"]:
        r = i - 1
        out[f"reference row {i} = computed row {order[r] + 1}"] = all(
            ref.rows[r][c] == B.rows[order[r]][c] for c in range(B.ncols))
    for blk in data["blocks"]:
        R = LaurentMatrix([ref.rows[i - 1] for i in blk], B.variables, B.ctx, B.ncols)
        C = LaurentMatrix([B.rows[order[i - 1]] for i in blk], B.variables, B.ctx, B.ncols)
        rr, rc, rs = rank_fraction_free(R), rank_fraction_free(C), rank_fraction_free(R.stack(C))
        out[f"rows {blk[0]}-{blk[-1]} span the same space"] = rr == rc == rs
    out["reference rank"] = rank_fraction_free(ref) == data["rank"]
    return out
