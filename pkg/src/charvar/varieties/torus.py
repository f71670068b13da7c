"""Torsion characters and translated subtori of (C^*)^n.

A character is a vector of rotation numbers q (t_j = exp(2 pi i q_j)) taken
mod 1.  A coset K is cut out by equations t^a = exp(2 pi i c_a) for the rows
a of a saturated integer lattice L, so it is always a single translated
subtorus.  The canonical form is the Hermite normal form of L together with
the values c on its rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from ..symbolic import MonomialUnit, hermite_normal_form, integer_kernel, saturate, smith_normal_form
from ..symbolic.cyclotomic import lcm
from ..symbolic.linalg import clear_denominators, rank_q, row_reduce


def _mod1(x) -> Fraction:
    return Fraction(x) % 1


def parse_rotation(text: str) -> Fraction:
    text = text.strip()
    try:
        return _mod1(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational rotation number: {text!r}") from exc


@dataclass(frozen=True)
class Character:
    """Torsion point of the character torus, stored as rotation numbers."""

    q: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(_mod1(x) for x in self.q))

    @classmethod
    def parse(cls, text: str) -> "Character":
        return cls(tuple(parse_rotation(p) for p in text.split(",")))

    @classmethod
    def identity(cls, n: int) -> "Character":
        return cls((Fraction(0),) * n)

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "Character":
        """Character with coordinates +-1."""
        return cls(tuple(Fraction(0) if s == 1 else Fraction(1, 2) for s in signs))

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def order(self) -> int:
        return lcm(*(x.denominator for x in self.q))

    def is_identity(self) -> bool:
        return not any(self.q)

    def __mul__(self, other: "Character") -> "Character":
        return Character(tuple(a + b for a, b in zip(self.q, other.q)))

    def __pow__(self, k: int) -> "Character":
        return Character(tuple(k * a for a in self.q))

    def inverse(self) -> "Character":
        return self ** -1

    def product_condition(self) -> bool:
        """t_1 ... t_n = 1."""
        return sum(self.q) % 1 == 0

    def restrict(self, indices: Sequence[int]) -> "Character":
        return Character(tuple(self.q[i] for i in indices))

    def __str__(self) -> str:
        return "(" + ", ".join(format_rotation(x) for x in self.q) + ")"

    def to_json(self) -> list[str]:
        return [str(x) for x in self.q]


def format_rotation(q: Fraction) -> str:
    q = _mod1(q)
    if q == 0:
        return "1"
    if q == Fraction(1, 2):
        return "-1"
    return f"e(2pi i {q})"


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusCoset:
    """{t : t^a = exp(2 pi i c_a) for every row a of ``lattice``}.

    ``lattice`` is kept in Hermite normal form and saturated; ``values`` are
    the rotation numbers c on those rows, reduced mod 1.
    """

    n: int
    lattice: tuple[tuple[int, ...], ...]
    values: tuple[Fraction, ...]

    # construction ------------------------------------------------------
    @classmethod
    def from_lattice(cls, n: int, rows: Sequence[Sequence[int]], translate: Character | Sequence = None
                     ) -> "TorusCoset":
        q = _as_q(translate, n)
        H = saturate([list(r) for r in rows], n)
        return cls._make(n, H, q)

    @classmethod
    def from_exponents(cls, exponents: Sequence[Sequence[int]], translate: Character | Sequence = None
                       ) -> "TorusCoset":
        """``exponents`` is n x k: t_i = rho_i * prod_j s_j^{B_ij}."""
        n = len(exponents)
        q = _as_q(translate, n)
        k = len(exponents[0]) if n else 0
        if k == 0:
            L = [[int(i == j) for j in range(n)] for i in range(n)]
        else:
            BT = [[exponents[i][j] for i in range(n)] for j in range(k)]
            L = integer_kernel(BT, n)
        return cls._make(n, hermite_normal_form(L, n), q)

    @classmethod
    def point(cls, t: Character) -> "TorusCoset":
        n = t.n
        return cls.from_lattice(n, [[int(i == j) for j in range(n)] for i in range(n)], t)

    @classmethod
    def whole(cls, n: int) -> "TorusCoset":
        return cls(n, (), ())

    @classmethod
    def _make(cls, n: int, H: Sequence[Sequence[int]], q: Sequence[Fraction]) -> "TorusCoset":
        H = tuple(tuple(r) for r in H)
        vals = tuple(_mod1(sum(a * x for a, x in zip(r, q))) for r in H)
        return cls(n, H, vals)

    @classmethod
    def from_json(cls, data: dict) -> "TorusCoset":
        q = [parse_rotation(str(x)) for x in data["translate"]]
        n = len(q)
        if "lattice" in data:
            return cls.from_lattice(n, data["lattice"], q)
        if "exponents" in data:
            cols = data["exponents"]
            B = [[int(cols[j][i]) for j in range(len(cols))] for i in range(n)] if cols else [[] for _ in range(n)]
            return cls.from_exponents(B, q)
        raise ValueError("coset needs 'lattice' or 'exponents'")

    def to_json(self) -> dict:
        return {"translate": [str(x) for x in self.translate.q],
                "lattice": [list(r) for r in self.lattice],
                "exponents": [list(c) for c in zip(*self.exponents)] if self.dim else []}

    # views ---------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.n - len(self.lattice)

    @cached_property
    def _snf(self):
        if not self.lattice:
            I = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
            return [], I
        U, D, V = smith_normal_form(self.lattice, self.n)
        return U, V

    @cached_property
    def translate(self) -> Character:
        """A particular point of the coset (determined by the SNF)."""
        U, V = self._snf
        r = len(self.lattice)
        if r == 0:
            return Character.identity(self.n)
        # saturated lattice: every invariant factor is 1
        uc = [sum(U[i][k] * self.values[k] for k in range(r)) for i in range(r)]
        qp = uc + [Fraction(0)] * (self.n - r)
        return Character(tuple(sum(V[i][k] * qp[k] for k in range(self.n)) for i in range(self.n)))

    @cached_property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        """n x dim exponent matrix B of a parametrization t = rho * s^B."""
        _, V = self._snf
        r = len(self.lattice)
        cols = [[V[i][k] for i in range(self.n)] for k in range(r, self.n)]
        cols = hermite_normal_form(cols, self.n) if cols else []
        return tuple(tuple(cols[k][i] for k in range(len(cols))) for i in range(self.n))

    def parametrization(self) -> list[MonomialUnit]:
        rho = self.translate
        return [MonomialUnit(rho.q[i], tuple(self.exponents[i])) for i in range(self.n)]

    def format_parametrization(self, names: Sequence[str] | None = None) -> str:
        k = self.dim
        if names is None:
            names = ["t"] if k == 1 else [f"s{j + 1}" for j in range(k)]
        out = []
        for u in self.parametrization():
            parts = []
            if u.rotation != 0:
                parts.append(format_rotation(u.rotation))
            for nm, e in zip(names, u.exponents):
                if e == 1:
                    parts.append(nm)
                elif e:
                    parts.append(f"{nm}^{e}")
            out.append("*".join(parts) if parts else "1")
        return "(" + ", ".join(out) + ")"

    # predicates ----------------------------------------------------------
    def contains_point(self, t: Character) -> bool:
        return all(_mod1(sum(a * x for a, x in zip(r, t.q))) == c for r, c in zip(self.lattice, self.values))

    def contains(self, other: "TorusCoset") -> bool:
        """other is a subset of self."""
        if self.n != other.n:
            raise ValueError("ambient dimensions differ")
        if self.lattice:
            r2 = rank_q(list(other.lattice), self.n) if other.lattice else 0
            if rank_q(list(other.lattice) + list(self.lattice), self.n) != r2:
                return False
        return self.contains_point(other.translate)

    def is_essential(self) -> bool:
        """No coordinate is identically 1 on the coset."""
        unit = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        for i in range(self.n):
            e = TorusCoset.from_lattice(self.n, [unit[i]])
            if e.contains(self):
                return False
        return True

    def support(self) -> tuple[int, ...]:
        """Coordinates that are not identically 1."""
        unit = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        return tuple(i for i in range(self.n) if not TorusCoset.from_lattice(self.n, [unit[i]]).contains(self))

    def translate_order(self) -> int:
        """Smallest order of a point of the coset (the order of ``translate``)."""
        return lcm(*(c.denominator for c in self.values)) if self.values else 1

    def torsion_points(self, order: int) -> list[Character]:
        """All points of the coset whose order divides ``order``."""
        if order % self.translate_order():
            return []
        base = self.translate
        k = self.dim
        B = self.exponents
        pts = set()
        for s in product(range(order), repeat=k):
            q = [base.q[i] + sum(Fraction(B[i][j] * s[j], order) for j in range(k)) for i in range(self.n)]
            c = Character(tuple(q))
            if order % c.order == 0:
                pts.add(c)
        return sorted(pts, key=lambda c: c.q)

    def sample_points(self, count: int, rng, max_den: int = 12) -> list[Character]:
        base = self.translate
        k = self.dim
        out = []
        for _ in range(count):
            s = [Fraction(rng.randrange(max_den), max_den) for _ in range(k)]
            out.append(Character(tuple(base.q[i] + sum(self.exponents[i][j] * s[j] for j in range(k))
                                       for i in range(self.n))))
        return out

    def __mul__(self, t: Character) -> "TorusCoset":
        return TorusCoset._make(self.n, self.lattice, [a + b for a, b in zip(self.translate.q, t.q)])

    def sort_key(self):
        return (self.lattice, self.values)

    def __str__(self) -> str:
        return self.format_parametrization()


def _as_q(translate, n: int) -> list[Fraction]:
    if translate is None:
        return [Fraction(0)] * n
    q = list(translate.q) if isinstance(translate, Character) else [_mod1(x) for x in translate]
    if len(q) != n:
        raise ValueError("translate has the wrong length")
    return q


def coset_intersect(K1: TorusCoset, K2: TorusCoset) -> list[TorusCoset]:
    """K1 and K2 meet in a finite union of cosets of one subtorus."""
    if K1.n != K2.n:
        raise ValueError("ambient dimensions differ")
    n = K1.n
    L = [list(r) for r in K1.lattice] + [list(r) for r in K2.lattice]
    c = list(K1.values) + list(K2.values)
    if not L:
        return [K1]
    U, D, V = smith_normal_form(L, n)
    uc = [sum(U[i][k] * c[k] for k in range(len(c))) for i in range(len(L))]
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    for i in range(r, len(L)):
        if _mod1(uc[i]) != 0:
            return []
    sat = saturate(L, n)
    out = set()
    diag = [D[i][i] for i in range(r)]
    for ks in product(*(range(d) for d in diag)):
        qp = [(uc[i] + ks[i]) / diag[i] for i in range(r)] + [Fraction(0)] * (n - r)
        q = [sum(V[i][k] * qp[k] for k in range(n)) for i in range(n)]
        out.add(TorusCoset._make(n, sat, q))
    return sorted(out, key=TorusCoset.sort_key)


def exp_coset(basis: Sequence[Sequence], translate: Character | Sequence | None = None,
              n: int | None = None) -> TorusCoset:
    """Translate of exp(C) for the rational subspace C spanned by ``basis``."""
    if n is None:
        n = len(basis[0]) if basis else len(_as_q(translate, 0) if translate is None else translate.q)
    q = _as_q(translate, n)
    rows = [clear_denominators(v) for v in basis if any(v)]
    if not rows:
        return TorusCoset.point(Character(tuple(q)))
    red, _ = row_reduce(rows, n)
    rows = [clear_denominators(v) for v in red]
    L = integer_kernel(rows, n)
    return TorusCoset._make(n, hermite_normal_form(L, n), q)


def solve_equations(n: int, rows: Sequence[Sequence[int]], values: Sequence = ()) -> list[TorusCoset]:
    """Components of {t : t^a = exp(2 pi i c_a)} for the given rows a and
    values c (zero when omitted); the rows need not span a saturated lattice."""
    vals = tuple(_mod1(v) for v in values) if values else (Fraction(0),) * len(rows)
    raw = TorusCoset(n, tuple(tuple(r) for r in rows), vals)
    return coset_intersect(raw, TorusCoset.whole(n))
