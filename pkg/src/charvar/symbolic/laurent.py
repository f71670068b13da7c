"""Multivariate Laurent polynomials with cyclotomic-integer coefficients.

A polynomial is a mapping from integer exponent vectors (negative entries
allowed) to nonzero coefficients in Z[zeta_N] (or Q(zeta_N)).  Variables are
named; the Alexander matrix uses ``t1..tn`` and parametrized subtori use
``s1..sk``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cyclotomic import Coef, CycloContext, lcm


@dataclass(frozen=True)
class MonomialUnit:
    """The unit exp(2 pi i * rotation) * s^exponents."""

    rotation: Fraction
    exponents: tuple[int, ...]

    @classmethod
    def constant(cls, rotation, nparams: int = 0) -> "MonomialUnit":
        return cls(Fraction(rotation) % 1, (0,) * nparams)


class LaurentPoly:
    __slots__ = ("variables", "ctx", "terms", "_hash")

    def __init__(self, variables: Sequence[str], ctx: CycloContext,
                 terms: Mapping[tuple[int, ...], Coef] | None = None):
        self.variables = tuple(variables)
        self.ctx = ctx
        clean = {}
        if terms:
            for e, c in terms.items():
                if any(c):
                    clean[tuple(e)] = tuple(c)
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, variables, ctx=None) -> "LaurentPoly":
        return cls(variables, ctx or CycloContext(1))

    @classmethod
    def constant(cls, value, variables, ctx=None) -> "LaurentPoly":
        ctx = ctx or CycloContext(1)
        if not isinstance(value, tuple):
            value = ctx.scalar(value)
        return cls(variables, ctx, {(0,) * len(tuple(variables)): value})

    @classmethod
    def monomial(cls, exponents, variables, ctx=None, coef=1) -> "LaurentPoly":
        ctx = ctx or CycloContext(1)
        if not isinstance(coef, tuple):
            coef = ctx.scalar(coef)
        return cls(variables, ctx, {tuple(exponents): coef})

    @classmethod
    def variable(cls, index: int, variables, ctx=None) -> "LaurentPoly":
        e = [0] * len(tuple(variables))
        e[index] = 1
        return cls.monomial(e, variables, ctx)

    def _new(self, terms) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        p.variables = self.variables
        p.ctx = self.ctx
        p.terms = terms
        p._hash = None
        return p

    # coercion ---------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError("variable sets differ")
            if other.ctx is not self.ctx:
                raise ValueError("cyclotomic contexts differ; lift first")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.variables, self.ctx)
        return NotImplemented

    def lift(self, ctx: CycloContext) -> "LaurentPoly":
        if ctx is self.ctx:
            return self
        return LaurentPoly(self.variables, ctx,
                           {e: self.ctx.embed(c, ctx) for e, c in self.terms.items()})

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        add = self.ctx.add
        for e, c in other.terms.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                s = add(cur, c)
                if any(s):
                    out[e] = s
                else:
                    del out[e]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: tuple(-x for x in c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self._new({})
        mul = self.ctx.mul
        add = self.ctx.add
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = mul(c1, c2)
                cur = out.get(e)
                out[e] = c if cur is None else add(cur, c)
        return self._new({e: c for e, c in out.items() if any(c)})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = LaurentPoly.constant(1, self.variables, self.ctx)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: Coef) -> "LaurentPoly":
        mul = self.ctx.mul
        return self._new({e: v for e, v in ((e, mul(x, c)) for e, x in self.terms.items()) if any(v)})

    def shift(self, exponents: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponents."""
        return self._new({tuple(a + b for a, b in zip(e, exponents)): c
                          for e, c in self.terms.items()})

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_unit(self) -> bool:
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        return self.ctx.unit_sign_power(c) is not None

    def unit_inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise ArithmeticError("not a unit monomial")
        ((e, c),) = self.terms.items()
        su = self.ctx.unit_sign_power(c)
        if su is None:
            inv = self.ctx.inverse(c)
        else:
            inv = self.ctx.scale(self.ctx.power(-su[1]), su[0])
        return self._new({tuple(-x for x in e): inv})

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.variables, self.ctx)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.variables != self.variables:
            return False
        if other.ctx is not self.ctx:
            n = lcm(self.ctx.N, other.ctx.N)
            ctx = CycloContext(n)
            return self.lift(ctx).terms == other.lift(ctx).terms
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, self.ctx.N, frozenset(self.terms.items())))
        return self._hash

    # shape ------------------------------------------------------------
    def num_terms(self) -> int:
        return len(self.terms)

    def min_exponents(self) -> tuple[int, ...]:
        k = len(self.variables)
        if not self.terms:
            return (0,) * k
        return tuple(min(e[i] for e in self.terms) for i in range(k))

    def max_exponents(self) -> tuple[int, ...]:
        k = len(self.variables)
        if not self.terms:
            return (0,) * k
        return tuple(max(e[i] for e in self.terms) for i in range(k))

    def degree_spread(self) -> int:
        lo, hi = self.min_exponents(), self.max_exponents()
        return sum(h - l for l, h in zip(lo, hi))

    # evaluation -------------------------------------------------------
    def substitute(self, values: Sequence[MonomialUnit], params: Sequence[str]) -> "LaurentPoly":
        """Replace each variable by a unit ``zeta * s^b`` in new parameters."""
        params = tuple(params)
        if len(values) != len(self.variables):
            raise ValueError("one value per variable required")
        N = lcm(self.ctx.N, *(v.rotation.denominator for v in values))
        ctx = CycloContext(N)
        rot = [int(v.rotation.numerator * (N // v.rotation.denominator)) for v in values]
        k = len(params)
        for v in values:
            if len(v.exponents) != k:
                raise ValueError("parameter exponent length mismatch")
        out: dict = {}
        add, mul = ctx.add, ctx.mul
        for e, c in self.terms.items():
            cc = self.ctx.embed(c, ctx)
            z = sum(r * x for r, x in zip(rot, e))
            cc = mul(cc, ctx.power(z))
            ne = [0] * k
            for x, v in zip(e, values):
                if x:
                    for j, b in enumerate(v.exponents):
                        ne[j] += x * b
            ne = tuple(ne)
            cur = out.get(ne)
            out[ne] = cc if cur is None else add(cur, cc)
        return LaurentPoly(params, ctx, out)

    def evaluate(self, values: Sequence) -> Coef:
        """Evaluate at rotation numbers (one Fraction per variable); returns
        an element of the cyclotomic field of the required conductor as a
        pair (context, coefficient)."""
        units = [MonomialUnit.constant(v) for v in values]
        p = self.substitute(units, ())
        return p.ctx, p.terms.get((), p.ctx.zero)

    # presentation ------------------------------------------------------
    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda x: (sum(abs(v) for v in x), x)):
            c = self.terms[e]
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.variables, e) if x
            )
            cs = _coef_str(c, self.ctx)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if " " in cs or "z" in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        out = []
        for e in sorted(self.terms):
            c = self.terms[e]
            den = lcm(*(Fraction(x).denominator for x in c))
            out.append({"exp": list(e),
                        "coef": {"den": den, "num": [int(Fraction(x) * den) for x in c]}})
        return out

    @classmethod
    def from_json(cls, data: Iterable[dict], variables, ctx: CycloContext) -> "LaurentPoly":
        terms = {}
        for t in data:
            den = t["coef"].get("den", 1)
            num = t["coef"]["num"]
            num = list(num) + [0] * (ctx.phi - len(num))
            terms[tuple(t["exp"])] = tuple(
                (x // den if x % den == 0 else Fraction(x, den)) for x in num)
        return cls(variables, ctx, terms)


def _coef_str(c: Coef, ctx: CycloContext) -> str:
    nz = [(k, x) for k, x in enumerate(c) if x]
    if len(nz) == 1 and nz[0][0] == 0:
        return str(nz[0][1])
    bits = []
    for k, x in nz:
        z = "z" if k == 1 else f"z^{k}"
        if k == 0:
            bits.append(str(x))
        elif x == 1:
            bits.append(z)
        elif x == -1:
            bits.append("-" + z)
        else:
            bits.append(f"{x}*{z}")
    return " + ".join(bits).replace("+ -", "- ")


class LaurentMatrix:
    """A dense rows x cols grid of LaurentPoly sharing one variable set."""

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]], variables: Sequence[str],
                 ctx: CycloContext | None = None, ncols: int | None = None):
        self.variables = tuple(variables)
        rows = [list(r) for r in rows]
        if ctx is None:
            N = lcm(*(p.ctx.N for r in rows for p in r)) if rows else 1
            ctx = CycloContext(N)
        self.ctx = ctx
        self.rows = [[p.lift(ctx) for p in r] for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            ncols = len(rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            for p in r:
                if p.variables != self.variables:
                    raise ValueError("entry uses a different variable set")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.variables == other.variables
                and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)))

    @classmethod
    def identity(cls, n: int, variables, ctx=None) -> "LaurentMatrix":
        ctx = ctx or CycloContext(1)
        z = LaurentPoly.zero(variables, ctx)
        o = LaurentPoly.constant(1, variables, ctx)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], variables, ctx, n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, variables, ctx=None) -> "LaurentMatrix":
        ctx = ctx or CycloContext(1)
        z = LaurentPoly.zero(variables, ctx)
        return cls([[z] * ncols for _ in range(nrows)], variables, ctx, ncols)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.ncols != len(other.rows):
            raise ValueError("shape mismatch")
        z = LaurentPoly.zero(self.variables, self.ctx)
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = z
                for k, a in enumerate(r):
                    if a.terms:
                        b = other.rows[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out, self.variables, self.ctx, other.ncols)

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                             self.variables, self.ctx, self.ncols)

    def scale(self, p: LaurentPoly) -> "LaurentMatrix":
        return LaurentMatrix([[p * a for a in r] for r in self.rows], self.variables, self.ctx, self.ncols)

    def is_zero(self) -> bool:
        return all(not p.terms for r in self.rows for p in r)

    def substitute(self, values: Sequence[MonomialUnit], params: Sequence[str] = ()) -> "LaurentMatrix":
        rows = [[p.substitute(values, params) for p in r] for r in self.rows]
        N = lcm(self.ctx.N, *(v.rotation.denominator for v in values))
        return LaurentMatrix(rows, params, CycloContext(N), self.ncols)

    def permuted(self, row_order: Sequence[int] | None = None,
                 col_order: Sequence[int] | None = None) -> "LaurentMatrix":
        rows = self.rows if row_order is None else [self.rows[i] for i in row_order]
        if col_order is not None:
            rows = [[r[j] for j in col_order] for r in rows]
        return LaurentMatrix(rows, self.variables, self.ctx,
                             self.ncols if col_order is None else len(col_order))

    def stack(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix(self.rows + other.rows, self.variables, self.ctx, self.ncols)

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "N": self.ctx.N,
                "rows": len(self.rows), "cols": self.ncols,
                "entries": [[p.to_json() for p in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentMatrix":
        ctx = CycloContext(data.get("N", 1))
        vs = data["variables"]
        rows = [[LaurentPoly.from_json(e, vs, ctx) for e in r] for r in data["entries"]]
        return cls(rows, vs, ctx, data["cols"])

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)

    def __repr__(self) -> str:
        return f"LaurentMatrix({len(self.rows)}x{self.ncols}, vars={list(self.variables)})"


def parse_laurent(text: str, variables: Sequence[str], ctx: CycloContext | None = None) -> LaurentPoly:
    """Parse a small polynomial expression such as ``t5*(t3-1)`` or ``1-t2*t5``.

    Supports + - * ^ (integer exponents), parentheses and integer constants.
    """
    import re

    ctx = ctx or CycloContext(1)
    variables = tuple(variables)
    tokens = re.findall(r"\d+|[A-Za-z_][A-Za-z_0-9]*|[()+\-*^]", text.replace("**", "^"))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        val = term()
        if sign < 0:
            val = -val
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() == "*" or (peek() is not None and peek() not in ("+", "-", ")")):
            if peek() == "*":
                take()
            val = val * factor()
        return val

    def factor():
        base = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            k = int(take())
            base = base ** (-k if neg else k)
        return base

    def atom():
        tok = take()
        if tok == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if tok == "-":
            return -factor()
        if tok.isdigit():
            return LaurentPoly.constant(int(tok), variables, ctx)
        if tok in variables:
            return LaurentPoly.variable(variables.index(tok), variables, ctx)
        raise ValueError(f"unknown token {tok!r}")

    out = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out
