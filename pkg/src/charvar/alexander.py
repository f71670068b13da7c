"""Fox calculus, Alexander matrices, the Gassner representation, and the
Orlik-Solomon algebra in degrees up to 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, IntersectionData, intersection_data
from .braidgroup import GroupPresentation, PureBraid, Word
from .symbolic import CycloContext, LaurentMatrix, LaurentPoly, rank_q


def torus_variables(m: int) -> tuple[str, ...]:
    return tuple(f"t{i}" for i in range(1, m + 1))


# ---------------------------------------------------------------------------
# group ring and Fox calculus
# ---------------------------------------------------------------------------

class GroupRingElement:
    """Finite Z-linear combination of free-group words."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, int] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, w: Word, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: dict[Word, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    def left(self, w: Word) -> "GroupRingElement":
        return GroupRingElement.of(w) * self

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def abelianize(self, variables: Sequence[str], ctx: CycloContext | None = None) -> LaurentPoly:
        """Map x_g to the g-th variable."""
        ctx = ctx or CycloContext(1)
        k = len(variables)
        out = LaurentPoly.zero(variables, ctx)
        for w, c in self.terms.items():
            out = out + LaurentPoly.monomial(w.exponent_sums(k), variables, ctx, c)
        return out

    def __repr__(self) -> str:
        return " + ".join(f"{c}*[{w.format()}]" for w, c in self.terms.items()) or "0"


def fox_derivative(w: Word, j: int) -> GroupRingElement:
    """d w / d x_j, using d(uv) = du + u dv."""
    if j < 1:
        raise ValueError("generator index out of range")
    out: dict[Word, int] = {}
    prefix: list = []
    for g, e in w.letters:
        if g == j:
            if e > 0:
                key = Word(prefix)
                out[key] = out.get(key, 0) + 1
            else:
                key = Word(prefix + [(g, -1)])
                out[key] = out.get(key, 0) - 1
        prefix.append((g, e))
    return GroupRingElement(out)


def fox_row(w: Word, variables: Sequence[str], ctx: CycloContext | None = None) -> list[LaurentPoly]:
    """Abelianized Fox derivatives of w with respect to every generator."""
    ctx = ctx or CycloContext(1)
    m = len(variables)
    acc: list[dict] = [dict() for _ in range(m)]
    pos = [0] * m
    for g, e in w.letters:
        if g > m:
            raise ValueError("word uses a generator beyond the variable list")
        if e > 0:
            key = tuple(pos)
            acc[g - 1][key] = acc[g - 1].get(key, 0) + 1
            pos[g - 1] += 1
        else:
            pos[g - 1] -= 1
            key = tuple(pos)
            acc[g - 1][key] = acc[g - 1].get(key, 0) - 1
    return [LaurentPoly(variables, ctx, {e: ctx.scalar(c) for e, c in d.items() if c}) for d in acc]


def alexander_matrix(P: GroupPresentation, variables: Sequence[str] | None = None) -> LaurentMatrix:
    """Abelianized Fox Jacobian; the generator g maps to variable t_g."""
    variables = tuple(variables) if variables is not None else torus_variables(P.ngens)
    rows = [fox_row(r, variables) for r in P.relators]
    return LaurentMatrix(rows, variables, CycloContext(1), ncols=len(variables))


def gassner(b: PureBraid, variables: Sequence[str] | None = None) -> LaurentMatrix:
    """Theta(b)_{ik} = (d b(x_i) / d x_k)^ab, so Theta(b1 b2) = Theta(b1) Theta(b2)."""
    variables = tuple(variables) if variables is not None else torus_variables(b.n)
    rows = [fox_row(img, variables) for img in b.images()]
    return LaurentMatrix(rows, variables, CycloContext(1), ncols=len(variables))


def block_alexander(P: GroupPresentation) -> LaurentMatrix:
    """Rows (id - t_{n+j} Theta(abar_j) | t_i - 1 in column n + j), grouped by fiber."""
    if P.kind != "fibered":
        raise ValueError("block form needs a fibered presentation")
    n = P.n_wires
    m = P.ngens
    variables = torus_variables(m)
    ctx = CycloContext(1)
    one = LaurentPoly.constant(1, variables, ctx)
    zero = LaurentPoly.zero(variables, ctx)
    t = [LaurentPoly.variable(k, variables, ctx) for k in range(m)]
    rows = []
    for j, abar in enumerate(P.monodromy):
        theta = gassner(abar, variables[:n]) if n else None
        tj = t[n + j]
        for i in range(n):
            row = []
            for k in range(n):
                th = LaurentPoly(variables, ctx, {e + (0,) * (m - n): c for e, c in theta[i, k].terms.items()})
                row.append((one if i == k else zero) - tj * th)
            for jj in range(m - n):
                row.append(t[i] - one if jj == j else zero)
            rows.append(row)
    return LaurentMatrix(rows, variables, ctx, ncols=m)


# ---------------------------------------------------------------------------
# Orlik-Solomon algebra, degrees 1 and 2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OSAlgebra:
    """A^2 has basis a_{i1} ^ a_q for each flat i1 < ... < im and q in it,
    q != i1; other products rewrite as a_p ^ a_q = a_{i1}^a_q - a_{i1}^a_p."""

    n: int
    flats: tuple[tuple[int, ...], ...]

    @property
    def basis(self) -> tuple[tuple[int, int], ...]:
        return tuple((f[0], q) for f in self.flats for q in f[1:])

    @property
    def dim2(self) -> int:
        return sum(len(f) - 1 for f in self.flats)

    def _index(self) -> dict:
        return {b: k for k, b in enumerate(self.basis)}

    def rewrite(self, p: int, q: int) -> dict[int, int]:
        """Coordinates of a_p ^ a_q in the A^2 basis."""
        if p == q:
            return {}
        sign = 1
        if p > q:
            p, q, sign = q, p, -1
        flat = self._flat_of(p, q)
        idx = self._index()
        i1 = flat[0]
        if p == i1:
            return {idx[(i1, q)]: sign}
        return {idx[(i1, q)]: sign, idx[(i1, p)]: -sign}

    def _flat_of(self, p: int, q: int) -> tuple[int, ...]:
        for f in self.flats:
            if p in f and q in f:
                return f
        raise ValueError(f"hyperplanes {p} and {q} lie in no common flat")

    def multiplication_matrix(self, lam: Sequence) -> list[list[Fraction]]:
        """Matrix of x -> lam ^ x, from A^1 (columns) to A^2 (rows)."""
        lam = [Fraction(x) for x in lam]
        if len(lam) != self.n:
            raise ValueError("lambda has the wrong length")
        M = [[Fraction(0)] * self.n for _ in range(self.dim2)]
        for k in range(self.n):
            for i in range(self.n):
                if i != k and lam[i]:
                    for r, c in self.rewrite(i, k).items():
                        M[r][k] += lam[i] * c
        return M


def os_algebra(arr: Arrangement | IntersectionData) -> OSAlgebra:
    if isinstance(arr, Arrangement):
        if not (arr.ambient_dim == 3 and arr.central):
            raise ValueError("the Orlik-Solomon algebra is computed on a central arrangement; cone first")
        arr = intersection_data(arr)
    return OSAlgebra(arr.n, arr.flats)


def resonance_depth(os: OSAlgebra, lam: Sequence) -> int:
    """dim ker(lam ^ -) - 1, and n at lam = 0."""
    lam = [Fraction(x) for x in lam]
    if len(lam) != os.n:
        raise ValueError("lambda has the wrong length")
    if not any(lam):
        return os.n
    M = os.multiplication_matrix(lam)
    return os.n - rank_q(M, os.n) - 1
