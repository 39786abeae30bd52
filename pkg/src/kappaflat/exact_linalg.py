"""Exact rank, determinant and Pfaffian over Q and over prime fields.

Matrices over Q hold :class:`fractions.Fraction` entries; matrices over
F_p hold ints reduced into ``[0, p)``.  Elimination never touches floats.

Pivoting is deterministic: at each step the first remaining row (in the
original row order) with a nonzero entry is chosen, and within it the
first nonzero column.  The pivot rows/columns are reported so callers can
exhibit a nonvanishing minor as a witness.
"""

from fractions import Fraction
from math import lcm

DEFAULT_PRIME = 2**31 - 1


class LinalgError(ValueError):
    pass


def _to_scalar(v, p):
    if p is None:
        return v if isinstance(v, Fraction) else Fraction(v)
    if isinstance(v, Fraction):
        if v.denominator % p == 0:
            raise LinalgError(f"denominator {v.denominator} is not invertible mod {p}")
        return v.numerator * pow(v.denominator, -1, p) % p
    return int(v) % p


class ExactMatrix:
    """Dense immutable matrix over Q (``p is None``) or F_p."""

    __slots__ = ("_rows", "nrows", "ncols", "p")

    def __init__(self, rows, p=None, ncols=None):
        rows = [tuple(_to_scalar(v, p) for v in row) for row in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise LinalgError("ragged matrix")
        self._rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = ncols
        self.p = p

    @classmethod
    def zeros(cls, nrows, ncols, p=None):
        return cls([[0] * ncols for _ in range(nrows)], p=p, ncols=ncols)

    @classmethod
    def identity(cls, n, p=None):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p=p, ncols=n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.p == other.p and self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.ncols, self._rows))

    def __repr__(self):
        field = "Q" if self.p is None else f"F_{self.p}"
        return f"ExactMatrix({self.nrows}x{self.ncols} over {field})"

    def _check_compat(self, other):
        if self.p != other.p:
            raise LinalgError("field mismatch")

    def __add__(self, other):
        self._check_compat(other)
        if self.shape != other.shape:
            raise LinalgError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self, other)],
                           p=self.p, ncols=self.ncols)

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self], p=self.p, ncols=self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return ExactMatrix([[a * c for a in r] for r in self], p=self.p, ncols=self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check_compat(other)
        if self.ncols != other.nrows:
            raise LinalgError("shape mismatch")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self]
        return ExactMatrix(out, p=self.p, ncols=other.ncols)

    @property
    def T(self):
        return ExactMatrix([list(c) for c in zip(*self._rows)] if self.nrows else [],
                           p=self.p, ncols=self.nrows)

    def submatrix(self, rows, cols):
        return ExactMatrix([[self._rows[i][j] for j in cols] for i in rows],
                           p=self.p, ncols=len(cols))

    def mod(self, p):
        """Reduce a rational matrix into F_p."""
        return ExactMatrix(self._rows, p=p, ncols=self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def is_skew(self):
        if not self.is_square():
            return False
        n = self.nrows
        return all(self._rows[i][j] == -self._rows[j][i] if self.p is None
                   else (self._rows[i][j] + self._rows[j][i]) % self.p == 0
                   for i in range(n) for j in range(i, n))

    def to_lists(self):
        return [list(r) for r in self._rows]


def as_matrix(M, p=None):
    if isinstance(M, ExactMatrix):
        return M
    return ExactMatrix(M, p=p)


def _integer_rows(M):
    """Clear denominators row by row.  Returns (int rows, product of row scalings)."""
    rows, scale = [], 1
    for r in M.rows:
        d = lcm(*(v.denominator for v in r)) if r else 1
        rows.append([int(v * d) for v in r])
        scale *= d
    return rows, scale


def _eliminate(M):
    """Row-major pivoted elimination.

    Over Q this is Bareiss's fraction-free scheme on the denominator-cleared
    rows; the k-th pivot equals the k-th leading minor of the matrix with
    rows and columns permuted into pivot order.  Over F_p it is ordinary
    Gaussian elimination.  Returns ``(pivot_rows, pivot_cols, last_pivot,
    scale)``.
    """
    p = M.p
    if p is None:
        rows, scale = _integer_rows(M)
    else:
        rows, scale = [list(r) for r in M.rows], 1
    ncols = M.ncols
    remaining = list(range(M.nrows))
    free_cols = list(range(ncols))
    piv_rows, piv_cols = [], []
    prev = 1
    while remaining:
        prow = pcol = None
        for i in remaining:
            r = rows[i]
            for c in free_cols:
                if r[c]:
                    prow, pcol = i, c
                    break
            if prow is not None:
                break
        if prow is None:
            break
        piv_rows.append(prow)
        piv_cols.append(pcol)
        remaining.remove(prow)
        free_cols.remove(pcol)
        pr = rows[prow]
        pv = pr[pcol]
        if p is None:
            for i in remaining:
                r = rows[i]
                f = r[pcol]
                if f:
                    for c in free_cols:
                        r[c] = (pv * r[c] - f * pr[c]) // prev
                else:
                    for c in free_cols:
                        r[c] = (pv * r[c]) // prev
                r[pcol] = 0
            prev = pv
        else:
            inv = pow(pv, -1, p)
            for i in remaining:
                r = rows[i]
                f = r[pcol]
                if f:
                    f = f * inv % p
                    for c in free_cols:
                        if pr[c]:
                            r[c] = (r[c] - f * pr[c]) % p
                    r[pcol] = 0
            prev = prev * pv % p
        remaining = [i for i in remaining if any(rows[i][c] for c in free_cols)]
    return piv_rows, piv_cols, prev, scale


def rank(M, p=None):
    """Exact rank of ``M`` over its field."""
    M = as_matrix(M, p)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return len(_eliminate(M)[0])


def pivots(M, p=None):
    """Pivot rows and columns from the deterministic elimination.

    For every ``t``, the submatrix on the first ``t`` pivot rows and first
    ``t`` pivot columns is nonsingular.
    """
    M = as_matrix(M, p)
    if M.nrows == 0 or M.ncols == 0:
        return [], []
    pr, pc, _, _ = _eliminate(M)
    return pr, pc


def _parity(seq):
    seq = list(seq)
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return inv & 1


def determinant(M, p=None):
    M = as_matrix(M, p)
    if not M.is_square():
        raise LinalgError(f"determinant of non-square {M.nrows}x{M.ncols} matrix")
    n = M.nrows
    if n == 0:
        return Fraction(1) if M.p is None else 1
    pr, pc, last, scale = _eliminate(M)
    if len(pr) < n:
        return Fraction(0) if M.p is None else 0
    sign = -1 if _parity(pr) ^ _parity(pc) else 1
    if M.p is None:
        return Fraction(sign * last, scale)
    return sign * last % M.p


def _skew_eliminate(M):
    """Congruence elimination on a skew matrix, two indices at a time.

    Returns ``(pairs, pf)`` where ``pairs`` are the pivot index pairs in the
    original numbering and ``pf`` is the Pfaffian (meaningful only when the
    pairs cover every index).  The principal submatrix on the union of the
    first ``t`` pairs is nonsingular for each ``t``.
    """
    p = M.p
    n = M.nrows
    a = [list(r) for r in M.rows]
    if p is None:
        a = [[Fraction(v) for v in r] for r in a]
    alive = list(range(n))
    pairs = []
    pf = 1
    while alive:
        i = j = None
        for s in alive:
            for t in alive:
                if t != s and a[s][t]:
                    i, j = s, t
                    break
            if i is not None:
                break
        if i is None:
            return pairs, 0
        # moving i, j to the front (in that order) is a permutation of
        # parity pos_i + pos_j - [pos_i < pos_j]
        pos_i, pos_j = alive.index(i), alive.index(j)
        sign = -1 if (pos_i + pos_j - (pos_i < pos_j)) % 2 else 1
        piv = a[i][j]
        pf = pf * sign * piv
        if p is not None:
            pf %= p
        pairs.append((i, j))
        alive.remove(i)
        alive.remove(j)
        inv = (1 / piv) if p is None else pow(piv, -1, p)
        ri, rj = a[i], a[j]
        for s in alive:
            rs = a[s]
            if not rs[i] and not rs[j]:
                continue
            for t in alive:
                # S[s][t] = a[s][t] + (a[j][s] a[i][t] - a[i][s] a[j][t]) / a[i][j]
                upd = (rj[s] * ri[t] - ri[s] * rj[t]) * inv
                if p is None:
                    rs[t] += upd
                else:
                    rs[t] = (rs[t] + upd) % p
    return pairs, pf


def _require_skew(M):
    if not M.is_square() or not M.is_skew():
        raise LinalgError("not skew-symmetric")
    if M.nrows % 2:
        raise LinalgError(f"not skew-symmetric of even dimension ({M.nrows}x{M.nrows})")


def pfaffian(M, p=None):
    """Pfaffian with ``pf([[0, 1], [-1, 0]]) == 1``."""
    M = as_matrix(M, p)
    _require_skew(M)
    if M.nrows == 0:
        return Fraction(1) if M.p is None else 1
    _, pf = _skew_eliminate(M)
    return Fraction(pf) if M.p is None else pf % M.p


def skew_pivots(M, p=None):
    """Pivot pairs of the skew elimination (for principal Pfaffian witnesses)."""
    M = as_matrix(M, p)
    if not M.is_square() or not M.is_skew():
        raise LinalgError("not skew-symmetric")
    pairs, _ = _skew_eliminate(M)
    return pairs


def even_rank(M, p=None):
    """Rank of a skew-symmetric matrix, via the skew elimination."""
    M = as_matrix(M, p)
    if not M.is_square() or not M.is_skew():
        raise LinalgError("not skew-symmetric")
    r = 2 * len(skew_pivots(M))
    assert r % 2 == 0
    return r
