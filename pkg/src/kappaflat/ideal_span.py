"""Symbolic minors and principal Pfaffians of exterior flattenings, and the
dimension of their linear span in a fixed degree over a prime field.

A monomial is a sorted tuple of variable indices (so ``x0^2 x3`` is
``(0, 0, 3)``).  Monomials of one degree are ordered colexicographically on
exponent vectors, which for sorted tuples is lexicographic order on the
reversed tuple.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .exact_linalg import DEFAULT_PRIME
from .exterior_flatten import PFAFFIAN_BLOCKS, flattening_pattern

MAX_MINOR_SIZE = 10
MAX_PFAFFIAN_SIZE = 12


class SpanError(ValueError):
    pass


def _colex(seq):
    return tuple(reversed(seq))


@dataclass(frozen=True)
class CoordinateSystem:
    """Coordinates on U* (x) S^2 V* (``symmetric``) or U* (x) V* (x) W*.

    Variable ``(i, a, b)`` (0-based; ``a <= b`` when symmetric) is the
    coefficient of ``e_i (x) f_a f_b``.  Variables are numbered in colex
    order of the triple.
    """

    m: int
    n: int
    k: int
    symmetric: bool
    variables: tuple = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.symmetric and self.k != self.n:
            raise SpanError("symmetric coordinates need k == n")
        if self.symmetric:
            triples = [(i, a, b) for i in range(self.m) for a in range(self.n)
                       for b in range(a, self.n)]
        else:
            triples = [(i, a, b) for i in range(self.m) for a in range(self.n)
                       for b in range(self.k)]
        triples.sort(key=_colex)
        object.__setattr__(self, "variables", tuple(triples))
        object.__setattr__(self, "_index", {t: v for v, t in enumerate(triples)})

    @classmethod
    def make(cls, m, n, k=None, symmetric=True):
        return cls(m, n, n if k is None else k, symmetric)

    @property
    def dim(self):
        return len(self.variables)

    def var(self, i, a, b):
        if self.symmetric and a > b:
            a, b = b, a
        return self._index[(i, a, b)]

    def name(self, v):
        i, a, b = self.variables[v]
        return f"x{i + 1}_{a + 1}{b + 1}"

    def point(self, x):
        """Coordinates of a tensor, in variable order."""
        if (x.m, x.n, x.k) != (self.m, self.n, self.k):
            raise SpanError("tensor does not match the coordinate system")
        return [x.entries[i][a][b] for i, a, b in self.variables]


class SparsePoly:
    """Homogeneous polynomial with integer (or F_p) coefficients."""

    __slots__ = ("cs", "degree", "terms")

    def __init__(self, cs, degree, terms):
        self.cs = cs
        self.degree = degree
        self.terms = {mono: c for mono, c in terms.items() if c}
        for mono in self.terms:
            if len(mono) != degree:
                raise SpanError("polynomial is not homogeneous")

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.cs == other.cs and self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        return f"SparsePoly(deg={self.degree}, terms={len(self.terms)})"

    def is_zero(self):
        return not self.terms

    def __neg__(self):
        return SparsePoly(self.cs, self.degree, {mo: -c for mo, c in self.terms.items()})

    def __add__(self, other):
        if self.degree != other.degree and self.terms and other.terms:
            raise SpanError("degree mismatch")
        out = dict(self.terms)
        for mo, c in other.terms.items():
            out[mo] = out.get(mo, 0) + c
        return SparsePoly(self.cs, max(self.degree, other.degree), out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            return SparsePoly(self.cs, self.degree + other.degree, _pmul(self.terms, other.terms))
        return SparsePoly(self.cs, self.degree, {mo: c * other for mo, c in self.terms.items()})

    def evaluate(self, values):
        total = 0
        for mono, c in self.terms.items():
            t = c
            for v in mono:
                t *= values[v]
                if not t:
                    break
            total += t
        return total

    def exponent_vector(self, mono):
        e = [0] * self.cs.dim
        for v in mono:
            e[v] += 1
        return e

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_colex, reverse=True):
            c = self.terms[mono]
            names = "*".join(self.cs.name(v) for v in mono)
            parts.append(f"{c}*{names}" if names else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def _pmul(f, g):
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            mo = tuple(sorted(m1 + m2))
            out[mo] = out.get(mo, 0) + c1 * c2
    return {mo: c for mo, c in out.items() if c}


def det_dp(entries):
    """Determinant of a square matrix of polynomials (dicts), by Laplace
    expansion along rows memoised over the set of used columns.

    ``entries[r][c]`` is a dict monomial -> coefficient (empty for zero).
    Cost is ``O(2^s s)`` polynomial products for size ``s``.
    """
    s = len(entries)
    dp = {0: {(): 1}}
    for r in range(s):
        nxt = {}
        row = entries[r]
        for mask, poly in dp.items():
            for c in range(s):
                if mask >> c & 1:
                    continue
                e = row[c]
                if not e:
                    continue
                # inversions added: used columns to the right of c
                sign = -1 if bin(mask >> (c + 1)).count("1") % 2 else 1
                prod = _pmul(poly, e)
                if not prod:
                    continue
                tgt = nxt.setdefault(mask | (1 << c), {})
                for mo, v in prod.items():
                    tgt[mo] = tgt.get(mo, 0) + sign * v
        dp = {mk: {mo: v for mo, v in pl.items() if v} for mk, pl in nxt.items()}
        dp = {mk: pl for mk, pl in dp.items() if pl}
    return dp.get((1 << s) - 1, {})


def pfaffian_dp(entries):
    """Pfaffian of a skew matrix of polynomials by expansion along the first
    remaining index, memoised over the remaining index set."""
    s = len(entries)
    if s % 2:
        raise SpanError("odd size")

    @lru_cache(maxsize=None)
    def pf(mask):
        if not mask:
            return {(): 1}
        i0 = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i0)
        out = {}
        q = 0
        for j in range(i0 + 1, s):
            if not rest >> j & 1:
                continue
            q += 1
            e = entries[i0][j]
            if e:
                sub = pf(rest & ~(1 << j))
                if sub:
                    sign = 1 if q % 2 else -1
                    for mo, v in _pmul(e, sub).items():
                        out[mo] = out.get(mo, 0) + sign * v
        return {mo: v for mo, v in out.items() if v}

    res = pf((1 << s) - 1)
    pf.cache_clear()
    return res


def symbolic_flattening(cs, j):
    """psi_j with entries as (sign, variable) pairs, ``None`` for zero."""
    m, n, k = cs.m, cs.n, cs.k
    nr, nc = n * comb(m, j), k * comb(m, j + 1)
    M = [[None] * nc for _ in range(nr)]
    for s_idx, t_idx, i, sign in flattening_pattern(m, j):
        for a in range(n):
            for b in range(k):
                M[s_idx * n + a][t_idx * k + b] = (sign, cs.var(i, a, b))
    return M


def symbolic_pfaffian_form(cs):
    """The 3n x 3n skew form [[0, A3, -A2], [-A3, 0, A1], [A2, -A1, 0]]."""
    if cs.m != 3 or not cs.symmetric:
        raise SpanError("pfaffian form requires m=3 partially symmetric")
    n = cs.n
    M = [[None] * (3 * n) for _ in range(3 * n)]
    for (I, J), (sign, i) in PFAFFIAN_BLOCKS.items():
        for a in range(n):
            for b in range(n):
                M[I * n + a][J * n + b] = (sign, cs.var(i, a, b))
    return M


def _entry_poly(e):
    return {(e[1],): e[0]} if e is not None else {}


def minor_poly(cs, sym, rows, cols):
    sub = [[_entry_poly(sym[r][c]) for c in cols] for r in rows]
    return SparsePoly(cs, len(rows), det_dp(sub))


def pfaffian_poly(cs, sym, idx):
    sub = [[_entry_poly(sym[r][c]) for c in idx] for r in idx]
    return SparsePoly(cs, len(idx) // 2, pfaffian_dp(sub))


def minor_generators(m, n, k=None, symmetric=True, j=0, size=1, cs=None):
    """All ``size x size`` minors of the symbolic psi_j.

    Ordered colex in (row subset, column subset): the column subset varies
    slowest.  Zero minors are kept so positions match subset pairs.
    """
    cs = cs or CoordinateSystem.make(m, n, k, symmetric)
    sym = symbolic_flattening(cs, j)
    nr, nc = len(sym), len(sym[0])
    if size > MAX_MINOR_SIZE:
        raise SpanError(f"minor size {size} exceeds the enumeration bound {MAX_MINOR_SIZE}")
    if not 1 <= size <= min(nr, nc):
        raise SpanError(f"minor size must lie in 1..{min(nr, nc)} for a {nr}x{nc} matrix")
    row_sets = sorted(combinations(range(nr), size), key=_colex)
    col_sets = sorted(combinations(range(nc), size), key=_colex)
    return [minor_poly(cs, sym, R, C) for C in col_sets for R in row_sets]


def pfaffian_generators(n, size, cs=None):
    """All principal ``size x size`` Pfaffians of the 3n x 3n skew form,
    one per colex ``size``-subset of ``0..3n-1``."""
    cs = cs or CoordinateSystem.make(3, n, symmetric=True)
    if size % 2:
        raise SpanError("Pfaffian size must be even")
    bound = min(3 * n, MAX_PFAFFIAN_SIZE)
    if not 2 <= size <= bound:
        raise SpanError(f"Pfaffian size must lie in 2..{bound}")
    sym = symbolic_pfaffian_form(cs)
    subsets = sorted(combinations(range(3 * n), size), key=_colex)
    return [pfaffian_poly(cs, sym, S) for S in subsets]


class SpanBasis:
    """Row echelon basis of a span of equal-degree polynomials over F_p."""

    def __init__(self, p=DEFAULT_PRIME, degree=None):
        self.p = p
        self.degree = degree
        self.pivots = {}  # colex key of leading monomial -> row (key -> coeff)

    def _row(self, f):
        if self.degree is None:
            self.degree = f.degree
        elif f.degree != self.degree:
            raise SpanError(f"degree mismatch: {f.degree} vs {self.degree}")
        p = self.p
        out = {}
        for mo, c in f.terms.items():
            if isinstance(c, Fraction):
                c = c.numerator * pow(c.denominator, -1, p)
            c %= p
            if c:
                out[_colex(mo)] = c
        return out

    def _reduce(self, row):
        p = self.p
        piv = self.pivots
        while row:
            lead = max(row)
            prow = piv.get(lead)
            if prow is None:
                return row, lead
            c = row[lead]
            for key, v in prow.items():
                nv = (row.get(key, 0) - c * v) % p
                if nv:
                    row[key] = nv
                else:
                    row.pop(key, None)
        return row, None

    def add(self, f):
        """Insert ``f``; return True if it enlarged the span."""
        row, lead = self._reduce(self._row(f))
        if not row:
            return False
        inv = pow(row[lead], -1, self.p)
        self.pivots[lead] = {key: v * inv % self.p for key, v in row.items()}
        return True

    def contains(self, f):
        row, _ = self._reduce(self._row(f))
        return not row

    def __len__(self):
        return len(self.pivots)


def span_dimension(polys, p=DEFAULT_PRIME):
    """Dimension over F_p of the span of equal-degree polynomials."""
    basis = SpanBasis(p)
    for f in polys:
        basis.add(f)
    return len(basis)


def in_span(f, polys, p=DEFAULT_PRIME):
    basis = SpanBasis(p, degree=f.degree)
    for g in polys:
        basis.add(g)
    return basis.contains(f)


def export_generators(polys):
    """Text format: one ``coeff e_1 ... e_D`` line per term, blocks split by ``---``."""
    blocks = []
    for f in polys:
        lines = [f"{c} " + " ".join(map(str, f.exponent_vector(mo)))
                 for mo, c in sorted(f.terms.items(), key=lambda t: _colex(t[0]), reverse=True)]
        blocks.append("\n".join(lines))
    return "\n---\n".join(blocks) + "\n"


def import_generators(text, cs):
    polys = []
    for block in text.split("---"):
        terms = {}
        deg = None
        for line in block.strip().splitlines():
            c, *exps = line.split()
            if len(exps) != cs.dim:
                raise SpanError(f"expected {cs.dim} exponents, got {len(exps)}")
            mono = tuple(v for v, e in enumerate(map(int, exps)) for _ in range(e))
            terms[mono] = int(c)
            deg = len(mono)
        polys.append(SparsePoly(cs, deg or 0, terms))
    return polys
