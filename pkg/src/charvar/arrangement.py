"""Real line and plane arrangements: forms, rank-2 flats, coning, sections,
wiring diagrams and sub-arrangement pattern search.

All coordinates are exact rationals.  Hyperplanes are indexed from 0
internally; labels (``H1``, ``H2``, ...) carry the user-facing numbering.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class ArrangementError(ValueError):
    """Invalid arrangement input or a non-generic geometric choice."""


def to_fraction(value) -> Fraction:
    """Parse an int, a Fraction or a ``"p/q"`` string; floats are rejected."""
    if isinstance(value, bool):
        raise ArrangementError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        if not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*", value):
            raise ArrangementError(f"not a rational number: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise ArrangementError(f"not a rational number: {value!r}")


def _proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u)))


def _normalize_form(f: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lead = next(x for x in f if x != 0)
    return tuple(x / lead for x in f)


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes a.x + c = 0 in Q^ambient_dim, listed in a fixed order.

    ``forms[i]`` has ambient_dim + 1 entries: the linear coefficients followed
    by the constant term.
    """

    ambient_dim: int
    forms: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.ambient_dim not in (2, 3):
            raise ArrangementError("ambient dimension must be 2 or 3")
        forms = tuple(tuple(to_fraction(x) for x in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(forms) != len(labels):
            raise ArrangementError("one label per form required")
        if len(set(labels)) != len(labels):
            raise ArrangementError("labels must be distinct")
        for f in forms:
            if len(f) != self.ambient_dim + 1:
                raise ArrangementError(f"form {f} has the wrong length")
            if not any(f[:-1]):
                raise ArrangementError(f"form {f} does not define a hyperplane")
        for i, j in combinations(range(len(forms)), 2):
            if _proportional(forms[i], forms[j]):
                raise ArrangementError(
                    f"forms {labels[i]} and {labels[j]} define the same hyperplane (proportional)")

    @property
    def n(self) -> int:
        return len(self.forms)

    @property
    def central(self) -> bool:
        return all(f[-1] == 0 for f in self.forms)

    def restrict(self, indices: Iterable[int]) -> "Arrangement":
        idx = sorted(indices)
        return Arrangement(self.ambient_dim, tuple(self.forms[i] for i in idx),
                           tuple(self.labels[i] for i in idx))

    def relabel(self, order: Sequence[int], labels: Sequence[str] | None = None) -> "Arrangement":
        """Arrangement whose i-th hyperplane is ``self``'s ``order[i]``-th."""
        forms = tuple(self.forms[i] for i in order)
        if labels is None:
            labels = tuple(f"H{i + 1}" for i in range(len(order)))
        return Arrangement(self.ambient_dim, forms, tuple(labels))

    def form_str(self, i: int) -> str:
        names = ("x", "y", "z")[: self.ambient_dim]
        parts = []
        for c, v in zip(self.forms[i], names + ("",)):
            if c == 0:
                continue
            mag = abs(c)
            s = "-" if c < 0 else "+"
            if v and mag == 1:
                parts.append(f"{s}{v}")
            else:
                parts.append(f"{s}{mag}{v}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def to_json(self) -> dict:
        def enc(x: Fraction):
            return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {"ambient_dim": self.ambient_dim, "central": self.central,
                "forms": [[enc(x) for x in f] for f in self.forms], "labels": list(self.labels)}


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([xyz])?")


def _parse_linear_form(text: str, names: str) -> list[Fraction]:
    coeffs = {v: Fraction(0) for v in names}
    const = Fraction(0)
    s = text.replace(" ", "")
    if not s:
        raise ArrangementError("empty form")
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ArrangementError(f"cannot parse linear form {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            if m.group(3) not in names:
                raise ArrangementError(f"unexpected variable in {text!r}")
            coeffs[m.group(3)] += sign * mag
        else:
            const += sign * mag
        pos = m.end()
    return [coeffs[v] for v in names] + [const]


def parse_arrangement(text) -> Arrangement:
    """Build an Arrangement from JSON (string or dict) or a comma separated
    list of linear forms such as ``"x-z, y-z, x, y"``.

    Forms that mention ``z`` describe a central arrangement in 3-space;
    otherwise the forms are affine lines in the (x, y)-plane.
    """
    if isinstance(text, dict):
        return _from_json(text)
    text = text.strip()
    if text.startswith("{"):
        return _from_json(json.loads(text))
    pieces = [p for p in re.split(r"[,;\n]", text) if p.strip()]
    dim = 3 if "z" in text else 2
    names = "xyz"[:dim]
    forms = [_parse_linear_form(p, names) for p in pieces]
    if dim == 3 and any(f[-1] for f in forms):
        raise ArrangementError("forms in x, y, z must be homogeneous")
    return Arrangement(dim, tuple(tuple(f) for f in forms),
                       tuple(f"H{i + 1}" for i in range(len(forms))))


def _from_json(data: dict) -> Arrangement:
    dim = int(data["ambient_dim"])
    forms = [[to_fraction(x) for x in f] for f in data["forms"]]
    labels = data.get("labels") or [f"H{i + 1}" for i in range(len(forms))]
    arr = Arrangement(dim, tuple(tuple(f) for f in forms), tuple(labels))
    if data.get("central") and not arr.central:
        raise ArrangementError("arrangement flagged central has a nonzero constant term")
    return arr


# ---------------------------------------------------------------------------
# intersection data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionData:
    """Rank-2 flats: maximal sets of hyperplanes through a common point
    (affine plane) or a common line through 0 (central 3-space)."""

    n: int
    flats: tuple[tuple[int, ...], ...]

    def multiple(self, min_size: int = 3) -> tuple[tuple[int, ...], ...]:
        return tuple(f for f in self.flats if len(f) >= min_size)

    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.flats:
            out[len(f)] = out.get(len(f), 0) + 1
        return dict(sorted(out.items()))

    def flat_of(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out = {}
        for f in self.flats:
            for a, b in combinations(f, 2):
                out[(a, b)] = f
                out[(b, a)] = f
        return out

    def restrict(self, subset: Iterable[int]) -> "IntersectionData":
        """Flats of the sub-arrangement on ``subset``, reindexed 0..k-1."""
        sub = sorted(subset)
        pos = {v: i for i, v in enumerate(sub)}
        flats = []
        for f in self.flats:
            g = tuple(pos[v] for v in f if v in pos)
            if len(g) >= 2:
                flats.append(g)
        return IntersectionData(len(sub), tuple(sorted(flats)))


def intersection_data(arr: Arrangement) -> IntersectionData:
    """All rank-2 flats in lexicographic order of their sorted vertex sets."""
    groups: dict[tuple, set[int]] = {}
    if arr.ambient_dim == 3 and arr.central:
        for i, j in combinations(range(arr.n), 2):
            a, b = arr.forms[i][:3], arr.forms[j][:3]
            d = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            key = _normalize_form(d)
            groups.setdefault(key, set()).update((i, j))
    elif arr.ambient_dim == 2:
        for i, j in combinations(range(arr.n), 2):
            pt = _meet2(arr.forms[i], arr.forms[j])
            if pt is not None:
                groups.setdefault(pt, set()).update((i, j))
    else:
        raise ArrangementError("intersection data needs a central 3-d or an affine 2-d arrangement")
    flats = sorted(tuple(sorted(s)) for s in groups.values())
    return IntersectionData(arr.n, tuple(flats))


def _meet2(f, g) -> tuple[Fraction, Fraction] | None:
    a1, b1, c1 = f
    a2, b2, c2 = g
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return ((-c1 * b2 + c2 * b1) / det, (-a1 * c2 + a2 * c1) / det)


# ---------------------------------------------------------------------------
# cone / decone / generic section
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decone:
    """Affine decone together with its bookkeeping.

    ``indices[i]`` is the index, in the central arrangement, of the i-th line
    of ``affine``; ``removed`` is the hyperplane sent to infinity.
    """

    affine: Arrangement
    central: Arrangement
    removed: int
    indices: tuple[int, ...]


def cone(arr: Arrangement, label: str | None = None) -> Arrangement:
    """Homogenize an affine line arrangement and append the plane z = 0."""
    if arr.ambient_dim != 2:
        raise ArrangementError("cone expects an affine arrangement in the plane")
    forms = [tuple(f) + (Fraction(0),) for f in arr.forms]
    forms.append((Fraction(0), Fraction(0), Fraction(1), Fraction(0)))
    if label is None:
        label = f"H{arr.n + 1}"
        while label in arr.labels:
            label += "'"
    return Arrangement(3, tuple(forms), arr.labels + (label,))


def decone(arr: Arrangement, h: int) -> Decone:
    """Send hyperplane ``h`` to infinity: choose coordinates with H_h = {z' = 0}
    and set z' = 1."""
    if not (arr.ambient_dim == 3 and arr.central):
        raise ArrangementError("decone expects a central arrangement in 3-space")
    fh = arr.forms[h][:3]
    basis = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        e = [[Fraction(int(k == i)) for k in range(3)], [Fraction(int(k == j)) for k in range(3)], list(fh)]
        det = (e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
               - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
               + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]))
        if det != 0:
            basis = e
            break
    # express each form as alpha*e_i + beta*e_j + gamma*f_h
    forms, indices = [], []
    for k, f in enumerate(arr.forms):
        if k == h:
            continue
        coeffs = _solve3([[basis[r][c] for r in range(3)] for c in range(3)], list(f[:3]))
        forms.append((coeffs[0], coeffs[1], coeffs[2]))
        indices.append(k)
    aff = Arrangement(2, tuple(forms), tuple(arr.labels[k] for k in indices))
    return Decone(aff, arr, h, tuple(indices))


def _solve3(A, b):
    n = len(A)
    m = [list(map(Fraction, A[i])) + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] for i in range(n)]


def generic_section(arr: Arrangement, plane: Sequence) -> Arrangement:
    """Restrict a central arrangement to the affine plane z = a x + b y + c.

    ``plane`` is (a, b, c).  The section is accepted only if its multiple
    points correspond exactly to the multiple flats of ``arr``.
    """
    if not (arr.ambient_dim == 3 and arr.central):
        raise ArrangementError("generic_section expects a central arrangement in 3-space")
    a, b, c = (to_fraction(v) for v in plane)
    forms = []
    for f in arr.forms:
        p, q, r = f[:3]
        g = (p + r * a, q + r * b, r * c)
        if g[0] == 0 and g[1] == 0:
            raise ArrangementError("section is not generic: a line is lost")
        forms.append(g)
    for i, j in combinations(range(len(forms)), 2):
        if _proportional(forms[i], forms[j]):
            raise ArrangementError("section is not generic: two lines coincide")
    sec = Arrangement(2, tuple(forms), arr.labels)
    big = set(intersection_data(arr).multiple())
    small = set(intersection_data(sec).multiple())
    if big != small:
        raise ArrangementError("section is not generic: multiple points differ from the flats")
    return sec


# ---------------------------------------------------------------------------
# wiring diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    wires: tuple[int, ...]       # I_k, wire numbers (1-based)
    lower: tuple[int, ...]       # I'_k
    upper: tuple[int, ...]       # I''_k
    J: tuple[int, ...]           # J_k
    position: Fraction           # projection value p(v_k)
    order_before: tuple[int, ...]
    order_after: tuple[int, ...]


@dataclass(frozen=True)
class WiringDiagram:
    """Wires are numbered 1..n from bottom to top over the basepoint, which
    lies to the right of every vertex; vertices are listed right to left.

    ``wire_lines[w - 1]`` is the arrangement index of wire w.
    """

    n: int
    vertices: tuple[Vertex, ...]
    wire_lines: tuple[int, ...]
    direction: tuple[Fraction, Fraction]
    fiber_coordinate: tuple[Fraction, Fraction]

    @property
    def flats(self) -> tuple[tuple[int, ...], ...]:
        return tuple(v.wires for v in self.vertices)

    def validate(self) -> None:
        order = tuple(range(1, self.n + 1))
        for v in self.vertices:
            if v.order_before != order:
                raise ArrangementError("wiring trace is inconsistent")
            pos = sorted(order.index(w) for w in v.wires)
            if pos != list(range(pos[0], pos[0] + len(pos))):
                raise ArrangementError("vertex wires are not adjacent")
            lo, hi = min(v.wires), max(v.wires)
            if v.J != tuple(sorted(i for i in v.upper if lo < i < hi)):
                raise ArrangementError("J set is inconsistent")
            order = v.order_after


def _line_profile(form, p, q):
    """Return (slope, intercept) of q along the line as an affine function of p."""
    alpha, beta, gamma = form
    a, b = p
    det = alpha * b - a * beta
    if det == 0:
        return None
    # solve alpha x + beta y = -gamma, a x + b y = u  ->  (x, y) affine in u
    x0, xu = (-gamma * b) / det, (-beta) / det
    y0, yu = (alpha * 0 + a * gamma) / det, alpha / det
    qa, qb = q
    return (qa * xu + qb * yu, qa * x0 + qb * y0)


def wiring_diagram(arr: Arrangement, direction: Sequence, tiebreak: Sequence | None = None
                   ) -> WiringDiagram:
    """Wiring diagram of a real affine line arrangement under the projection
    p(x, y) = direction . (x, y).

    The fiber coordinate is q = (-b, a) . (x, y) for direction (a, b).  Two
    vertices with equal projection are an error unless ``tiebreak`` is given;
    then ties are broken by decreasing tiebreak value, which is the same as
    projecting along direction + eps * tiebreak for a small eps > 0.
    """
    if arr.ambient_dim != 2:
        raise ArrangementError("wiring diagrams need an affine arrangement in the plane")
    p = tuple(to_fraction(x) for x in direction)
    if p == (0, 0):
        raise ArrangementError("zero projection direction")
    q = (-p[1], p[0])
    profiles = []
    for i, f in enumerate(arr.forms):
        prof = _line_profile(f, p, q)
        if prof is None:
            raise ArrangementError(f"line {arr.labels[i]} is a fiber of the projection")
        profiles.append(prof)
    data = intersection_data(arr)
    verts = []
    for flat in data.flats:
        x, y = _meet2(arr.forms[flat[0]], arr.forms[flat[1]])
        pv = p[0] * x + p[1] * y
        sec = None
        if tiebreak is not None:
            t = tuple(to_fraction(v) for v in tiebreak)
            sec = t[0] * x + t[1] * y
        verts.append((pv, sec, flat))
    verts.sort(key=lambda v: (v[0], v[1] if v[1] is not None else 0), reverse=True)
    for a, b in zip(verts, verts[1:]):
        if a[0] == b[0] and (tiebreak is None or a[1] == b[1]):
            raise ArrangementError(
                f"projection is not generic: two vertices share the value {a[0]}; "
                f"try direction {suggest_direction(arr, p)}")
    top = (verts[0][0] + 1) if verts else Fraction(0)
    heights = [m * top + k for m, k in profiles]
    wire_lines = tuple(sorted(range(arr.n), key=lambda i: heights[i]))
    wire_of = {line: w + 1 for w, line in enumerate(wire_lines)}
    order = list(range(1, arr.n + 1))  # bottom to top
    vertices = []
    for pv, _, flat in verts:
        wires = tuple(sorted(wire_of[i] for i in flat))
        pos = sorted(order.index(w) for w in wires)
        if pos != list(range(pos[0], pos[0] + len(pos))):
            raise ArrangementError("vertex wires are not adjacent (internal error)")
        lower = tuple(sorted(order[: pos[0]]))
        upper = tuple(sorted(order[pos[-1] + 1:]))
        lo, hi = wires[0], wires[-1]
        J = tuple(i for i in upper if lo < i < hi)
        before = tuple(order)
        order[pos[0]: pos[-1] + 1] = reversed(order[pos[0]: pos[-1] + 1])
        vertices.append(Vertex(wires, lower, upper, J, pv, before, tuple(order)))
    wd = WiringDiagram(arr.n, tuple(vertices), wire_lines, p, q)
    wd.validate()
    return wd


def suggest_direction(arr: Arrangement, near: Sequence | None = None) -> tuple[Fraction, Fraction]:
    """A generic projection direction, searched over small integer covectors."""
    data = intersection_data(arr)
    pts = [_meet2(arr.forms[f[0]], arr.forms[f[1]]) for f in data.flats]
    base = tuple(to_fraction(x) for x in near) if near is not None else (Fraction(1), Fraction(0))
    for k in range(1, 10_000):
        for cand in ((base[0] * k + 1, base[1] * k - 1), (Fraction(1), Fraction(k, 97)),
                     (Fraction(k), Fraction(1, 89))):
            cand = (Fraction(cand[0]), Fraction(cand[1]))
            if any(cand[0] * f[1] == cand[1] * f[0] for f in arr.forms):
                continue
            vals = [cand[0] * x + cand[1] * y for x, y in pts]
            if len(set(vals)) == len(vals):
                return cand
    raise ArrangementError("no generic direction found")


# ---------------------------------------------------------------------------
# sub-arrangement pattern search
# ---------------------------------------------------------------------------

def _triple_table(data: IntersectionData) -> set[frozenset]:
    out = set()
    for f in data.flats:
        if len(f) >= 3:
            for t in combinations(f, 3):
                out.add(frozenset(t))
    return out


def find_embeddings(data: IntersectionData, pattern: IntersectionData,
                    limit: int | None = None) -> list[tuple[int, ...]]:
    """All injective maps phi (as tuples phi[i] = target index) under which
    the pattern's flats are exactly the restricted flats of the image."""
    m, n = pattern.n, data.n
    if m > n:
        return []
    T_p = _triple_table(pattern)
    T_a = _triple_table(data)
    # assign elements of large flats first
    weight = [0] * m
    for f in pattern.flats:
        if len(f) >= 3:
            for v in f:
                weight[v] += len(f)
    order: list[int] = []
    remaining = set(range(m))
    while remaining:
        def score(v):
            links = sum(1 for f in pattern.flats if len(f) >= 3 and v in f
                        for u in f if u in order)
            return (-links, -weight[v], v)
        nxt = min(remaining, key=score)
        order.append(nxt)
        remaining.remove(nxt)
    phi = [-1] * m
    used = [False] * n
    out: list[tuple[int, ...]] = []

    def extend(depth: int) -> bool:
        if depth == m:
            out.append(tuple(phi))
            return limit is not None and len(out) >= limit
        a = order[depth]
        assigned = order[:depth]
        for v in range(n):
            if used[v]:
                continue
            ok = True
            for i in range(len(assigned)):
                b = assigned[i]
                for j in range(i + 1, len(assigned)):
                    c = assigned[j]
                    if (frozenset((a, b, c)) in T_p) != (frozenset((v, phi[b], phi[c])) in T_a):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            phi[a] = v
            used[v] = True
            if extend(depth + 1):
                return True
            used[v] = False
            phi[a] = -1
        return False

    extend(0)
    return sorted(out)


def find_subarrangements(arr: Arrangement | IntersectionData, pattern: IntersectionData
                         ) -> list[tuple[int, ...]]:
    """Sorted list of index subsets whose restricted flats are isomorphic to
    the pattern."""
    data = arr if isinstance(arr, IntersectionData) else intersection_data(arr)
    subsets = {tuple(sorted(phi)) for phi in find_embeddings(data, pattern)}
    return sorted(subsets)


def pattern_automorphisms(pattern: IntersectionData) -> list[tuple[int, ...]]:
    return find_embeddings(pattern, pattern)
