"""Exact ranks of Laurent matrices and rational linear algebra helpers."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cyclotomic import CycloContext, coef_content
from .laurent import LaurentMatrix, LaurentPoly


# --------------------------------------------------------------------------
# fraction-free elimination over Z[zeta_N][s^(+-1)]
# --------------------------------------------------------------------------

def _strip(row: list[LaurentPoly]) -> list[LaurentPoly]:
    """Divide a row by its monomial content and integer content."""
    nz = [p for p in row if p.terms]
    if not nz:
        return row
    k = len(nz[0].variables)
    lo = [min(min(e[i] for e in p.terms) for p in nz) for i in range(k)]
    if any(lo):
        shift = [-x for x in lo]
        row = [p.shift(shift) if p.terms else p for p in row]
    g = coef_content(c for p in row for c in p.terms.values())
    if g > 1:
        row = [p._new({e: tuple(x // g for x in c) for e, c in p.terms.items()}) for p in row]
    return row


def _zero_exp(p: LaurentPoly) -> tuple[int, ...]:
    return (0,) * len(p.variables)


def rank_cyclotomic(rows: Sequence[Sequence], ctx: CycloContext) -> int:
    """Rank of a matrix with entries in Q(zeta_N), by Gaussian elimination."""
    m = [list(r) for r in rows if any(any(c) for c in r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if any(m[i][c])), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = ctx.inverse(m[rank][c])
        prow = [ctx.mul(inv, x) if any(x) else x for x in m[rank]]
        m[rank] = prow
        for i in range(rank + 1, len(m)):
            f = m[i][c]
            if any(f):
                m[i] = [ctx.sub(x, ctx.mul(f, y)) if any(y) else x for x, y in zip(m[i], prow)]
        rank += 1
        if rank == len(m):
            break
    return rank


def _pivot_key(p: LaurentPoly):
    return (0 if p.is_unit() else 1, p.num_terms(), p.degree_spread())


def rank_fraction_free(M: LaurentMatrix) -> int:
    """Rank of M over the fraction field of its coefficient ring.

    Unit pivots (signed root of unity times a monomial) are used whenever one
    exists; otherwise rows are cross-multiplied and the monomial and integer
    contents are stripped.  Pivots are chosen by fewest terms, then by the
    smallest exponent spread, scanning rows then columns.
    """
    if all(p.is_constant() for r in M.rows for p in r):
        return rank_cyclotomic([[p.terms.get(_zero_exp(p), M.ctx.zero) if p.terms else M.ctx.zero
                                 for p in r] for r in M.rows], M.ctx)
    rows = [_strip(list(r)) for r in M.rows if any(p.terms for p in r)]
    cols = list(range(M.ncols))
    rank = 0
    while rows and cols:
        best = None
        for i, r in enumerate(rows):
            for j in cols:
                p = r[j]
                if p.terms:
                    key = _pivot_key(p)
                    if best is None or key < best[0]:
                        best = (key, i, j)
                        if key[0] == 0 and key[1] == 1 and key[2] == 0:
                            break
            if best is not None and best[0][0] == 0 and best[0][2] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        prow = rows.pop(pi)
        piv = prow[pj]
        cols.remove(pj)
        rank += 1
        if piv.is_unit():
            inv = piv.unit_inverse()
            prow = [inv * p if p.terms else p for p in prow]
            new_rows = []
            for r in rows:
                a = r[pj]
                if a.terms:
                    r = [x - a * y if y.terms else x for x, y in zip(r, prow)]
                    r = _strip(r)
                if any(r[j].terms for j in cols):
                    new_rows.append(r)
            rows = new_rows
        else:
            new_rows = []
            for r in rows:
                a = r[pj]
                if a.terms:
                    r = [piv * x - a * y if (x.terms or y.terms) else x for x, y in zip(r, prow)]
                    r = _strip(r)
                if any(r[j].terms for j in cols):
                    new_rows.append(r)
            rows = new_rows
    return rank


# --------------------------------------------------------------------------
# randomized finite-field oracle
# --------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def default_prime(N: int, floor: int = 2 ** 30) -> int:
    """Smallest prime p > floor with p = 1 mod N."""
    p = floor + 1
    p += (1 - p) % N
    while not _is_prime(p):
        p += N
    return p


def root_of_unity_mod(N: int, p: int) -> int:
    """An element of exact multiplicative order N in F_p."""
    if (p - 1) % N:
        raise ValueError(f"no element of order {N} modulo {p}")
    factors = _prime_factors(N)
    for g in range(2, p):
        w = pow(g, (p - 1) // N, p)
        if all(pow(w, N // q, p) != 1 for q in factors):
            return w
    raise ValueError("no root of unity found")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def evaluate_mod_p(M: LaurentMatrix, p: int, values: Sequence[int]) -> list[list[int]]:
    """Evaluate entries at the given nonzero residues, with zeta_N mapped to
    a fixed element of order N."""
    w = root_of_unity_mod(M.ctx.N, p) if M.ctx.N > 1 else 1
    zpow = [pow(w, k, p) for k in range(M.ctx.phi)]
    out = []
    for r in M.rows:
        row = []
        for poly in r:
            acc = 0
            for e, c in poly.terms.items():
                cv = 0
                for k, x in enumerate(c):
                    if x:
                        x = Fraction(x)
                        cv += x.numerator * pow(x.denominator, p - 2, p) * zpow[k]
                mono = 1
                for v, k in zip(values, e):
                    if k:
                        mono = mono * pow(v, k % (p - 1), p) % p
                acc += cv * mono
            row.append(acc % p)
        out.append(row)
    return out


def rank_finite_field(M: LaurentMatrix, p: int | None = None, seed: int = 0,
                      trials: int = 5, assignment: Sequence[int] | None = None) -> int:
    """Max rank over ``trials`` random evaluations in F_p.

    Requires p = 1 mod N so zeta_N has an image of exact order N.  Never
    exceeds the fraction-field rank; equals it with high probability.
    """
    N = M.ctx.N
    if p is None:
        p = default_prime(N)
    if (p - 1) % N:
        raise ValueError(f"prime {p} has no element of order {N}")
    if not M.rows:
        return 0
    rng = random.Random(seed)
    best = 0
    k = len(M.variables)
    runs = 1 if assignment is not None else trials
    for _ in range(runs):
        vals = list(assignment) if assignment is not None else [rng.randrange(1, p) for _ in range(k)]
        if any(v % p == 0 for v in vals):
            raise ValueError("assignment values must be nonzero mod p")
        best = max(best, rank_mod_p(evaluate_mod_p(M, p, vals), p))
    return best


# --------------------------------------------------------------------------
# rational matrices
# --------------------------------------------------------------------------

def row_reduce(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_q(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(row_reduce(rows, ncols)[1])


def nullspace_q(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} over Q."""
    red, pivots = row_reduce(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[f]
        basis.append(v)
    return basis


def clear_denominators(v: Sequence[Fraction]) -> list[int]:
    """Smallest primitive integer vector on the ray through v."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints
