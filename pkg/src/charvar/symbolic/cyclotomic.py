"""Exact arithmetic in cyclotomic rings Z[zeta_N] and fields Q(zeta_N).

Elements are stored as tuples of length phi(N) holding the coordinates in
the power basis 1, zeta, ..., zeta^(phi(N)-1).  Coordinates are ints or
Fractions; every operation keeps them exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Coef = tuple  # tuple of int | Fraction, length phi(N)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        q[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


class CycloContext:
    """Arithmetic modulo the N-th cyclotomic polynomial.

    ``power(k)`` returns zeta_N^k; ``embed`` maps an element into a context
    whose conductor is a multiple of N.
    """

    _cache: dict[int, "CycloContext"] = {}

    def __new__(cls, N: int) -> "CycloContext":
        ctx = cls._cache.get(N)
        if ctx is None:
            ctx = super().__new__(cls)
            ctx._setup(N)
            cls._cache[N] = ctx
        return ctx

    def _setup(self, N: int) -> None:
        if N < 1:
            raise ValueError("conductor must be positive")
        self.N = N
        self.phi_poly = cyclotomic_polynomial(N)
        self.phi = len(self.phi_poly) - 1
        # reduction of zeta^k for 0 <= k < N
        table = []
        cur = [0] * self.phi
        cur[0] = 1
        for _ in range(N):
            table.append(tuple(cur))
            # multiply by zeta
            shifted = [0] + cur
            top = shifted.pop()
            if top:
                for i in range(self.phi):
                    shifted[i] -= top * self.phi_poly[i]
            cur = shifted
        self._powers = tuple(table)
        self.zero: Coef = (0,) * self.phi
        self.one: Coef = self._powers[0]

    def __repr__(self) -> str:
        return f"CycloContext({self.N})"

    def __reduce__(self):
        return (CycloContext, (self.N,))

    def power(self, k: int) -> Coef:
        return self._powers[k % self.N]

    def scalar(self, c) -> Coef:
        return (c,) + (0,) * (self.phi - 1)

    @staticmethod
    def add(a: Coef, b: Coef) -> Coef:
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def sub(a: Coef, b: Coef) -> Coef:
        return tuple(x - y for x, y in zip(a, b))

    @staticmethod
    def neg(a: Coef) -> Coef:
        return tuple(-x for x in a)

    @staticmethod
    def is_zero(a: Coef) -> bool:
        return not any(a)

    def mul(self, a: Coef, b: Coef) -> Coef:
        if self.phi == 1:
            return (a[0] * b[0],)
        prod = [0] * (2 * self.phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[: self.phi])
        for k in range(self.phi, len(prod)):
            c = prod[k]
            if c:
                red = self.power(k)
                for i in range(self.phi):
                    out[i] += c * red[i]
        return tuple(out)

    def scale(self, a: Coef, c) -> Coef:
        return tuple(x * c for x in a)

    @lru_cache(maxsize=None)
    def _unit_index(self):
        idx = {}
        for k, p in enumerate(self._powers):
            idx.setdefault(p, (1, k))
            idx.setdefault(tuple(-x for x in p), (-1, k))
        return idx

    def unit_sign_power(self, a: Coef) -> tuple[int, int] | None:
        """Return (sign, k) with a == sign * zeta^k if a is such a unit."""
        return self._unit_index().get(tuple(a))

    def inverse(self, a: Coef) -> Coef:
        """Inverse in Q(zeta_N), via the multiplication matrix."""
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        su = self.unit_sign_power(a)
        if su is not None:
            sign, k = su
            return self.scale(self.power(-k), sign)
        # solve a * x = 1 as a linear system over Q
        cols = []
        for j in range(self.phi):
            basis = [0] * self.phi
            basis[j] = 1
            cols.append(self.mul(a, tuple(basis)))
        mat = [[Fraction(cols[j][i]) for j in range(self.phi)] + [Fraction(1 if i == 0 else 0)]
               for i in range(self.phi)]
        n = self.phi
        for c in range(n):
            piv = next(r for r in range(c, n) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [v / pv for v in mat[c]]
            for r in range(n):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return tuple(_normalize(mat[r][n]) for r in range(n))

    def embed(self, a: Coef, target: "CycloContext") -> Coef:
        """Image of ``a`` under zeta_N -> zeta_M^(M/N) into a context M."""
        if target.N % self.N:
            raise ValueError(f"cannot embed Q(zeta_{self.N}) into Q(zeta_{target.N})")
        if target is self:
            return a
        step = target.N // self.N
        out = target.zero
        for k, c in enumerate(a):
            if c:
                out = target.add(out, target.scale(target.power(k * step), c))
        return out

    def rotation(self, q: Fraction) -> Coef:
        """exp(2 pi i q) for a rational q whose denominator divides N."""
        q = Fraction(q)
        if self.N % q.denominator:
            raise ValueError(f"{q} is not an N-th root of unity rotation for N={self.N}")
        return self.power(q.numerator * (self.N // q.denominator))

    def to_complex(self, a: Coef) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(complex(float(c)) * z ** k for k, c in enumerate(a))


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def coef_content(coefs) -> int:
    """gcd of all integer coordinates; 0 if any coordinate is non-integral."""
    g = 0
    for c in coefs:
        for x in c:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    return 0
                x = x.numerator
            g = gcd(g, x)
            if g == 1:
                return 1
    return g
