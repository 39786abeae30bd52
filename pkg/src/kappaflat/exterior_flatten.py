"""Exterior flattenings psi_{j,x}: V (x) L^j U* -> W* (x) L^{j+1} U*.

Basis conventions (fixed; certificate witnesses refer to them):

* ``L^j U*`` has basis ``e_S`` for ``j``-subsets ``S`` of ``{1..m}`` in
  colexicographic order, e.g. ``{1,2}, {1,3}, {2,3}`` for ``m = 3, j = 2``.
* Rows are indexed by ``(a, S)`` and columns by ``(b, T)``, subset-major:
  row ``s_idx * n + a``, column ``t_idx * k + b``.
* ``e_i ^ e_S = sign(S, i) e_{S+{i}}`` with ``sign(S, i) = (-1)^{#{s in S: s < i}}``,
  so the entry at ``((a, S), (b, S+{i}))`` is ``sign(S, i) * (A_i)_{a,b}``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .exact_linalg import ExactMatrix
from .tensor_core import Tensor3, TensorError, _fmt


def colex_subsets(m, j):
    """All ``j``-subsets of ``{1..m}`` (1-based tuples) in colex order."""
    return sorted(combinations(range(1, m + 1), j), key=lambda s: tuple(reversed(s)))


@dataclass(frozen=True)
class SubsetBasis:
    m: int
    j: int
    subsets: tuple

    @classmethod
    def of(cls, m, j):
        return cls(m, j, tuple(colex_subsets(m, j)))

    def index(self, S):
        return self.subsets.index(tuple(S))

    def __len__(self):
        return len(self.subsets)


@lru_cache(maxsize=None)
def flattening_pattern(m, j):
    """Nonzero blocks of psi_j as ``(row_block, col_block, i, sign)``, ``i`` 0-based."""
    if not 0 <= j <= m - 1:
        raise TensorError(f"j must satisfy 0 <= j <= {m - 1}, got {j}")
    src = colex_subsets(m, j)
    tgt = {T: t for t, T in enumerate(colex_subsets(m, j + 1))}
    out = []
    for s_idx, S in enumerate(src):
        for i in range(1, m + 1):
            if i in S:
                continue
            T = tuple(sorted(S + (i,)))
            sign = -1 if sum(1 for s in S if s < i) % 2 else 1
            out.append((s_idx, tgt[T], i - 1, sign))
    return tuple(out)


@dataclass(frozen=True)
class FlatteningMatrix:
    j: int
    matrix: ExactMatrix
    row_labels: tuple  # (V index, j-subset), 0-based V index, 1-based subset
    col_labels: tuple  # (W index, (j+1)-subset)

    @property
    def shape(self):
        return self.matrix.shape

    def to_dict(self):
        return {
            "j": self.j,
            "rows": self.matrix.nrows,
            "cols": self.matrix.ncols,
            "entries": [[_fmt(v) for v in row] for row in self.matrix.rows],
            "row_labels": [[a, list(S)] for a, S in self.row_labels],
            "col_labels": [[b, list(T)] for b, T in self.col_labels],
        }


def exterior_flattening(x, j):
    """The matrix of psi_{j,x}, shape ``n C(m,j) x k C(m,j+1)``."""
    m, n, k = x.m, x.n, x.k
    pattern = flattening_pattern(m, j)
    nr, nc = n * comb(m, j), k * comb(m, j + 1)
    M = [[Fraction(0)] * nc for _ in range(nr)]
    for s_idx, t_idx, i, sign in pattern:
        A = x.entries[i]
        r0, c0 = s_idx * n, t_idx * k
        for a in range(n):
            row = M[r0 + a]
            Aa = A[a]
            for b in range(k):
                if Aa[b]:
                    row[c0 + b] = sign * Aa[b]
    rows = tuple((a, S) for S in colex_subsets(m, j) for a in range(n))
    cols = tuple((b, T) for T in colex_subsets(m, j + 1) for b in range(k))
    return FlatteningMatrix(j, ExactMatrix(M, ncols=nc), rows, cols)


# psi_1 for m = 3 has column blocks {1,2}, {1,3}, {2,3}; identifying
# L^2 U* with U via the Hodge star sends them to block positions 3, 2, 1
# with signs +, -, +.  The result is the skew form
#     [[0, A3, -A2], [-A3, 0, A1], [A2, -A1, 0]].
HODGE_M3 = ((0, 2, 1), (1, 1, -1), (2, 0, 1))  # (colex block, position, sign)


def _require_m3_symmetric(x):
    if not isinstance(x, Tensor3) or x.m != 3 or not x.symmetric:
        raise TensorError("pfaffian form requires m=3 partially symmetric")


def pfaffian_form(x):
    """The 3n x 3n skew matrix ``[[0, A3, -A2], [-A3, 0, A1], [A2, -A1, 0]]``.

    Obtained from ``exterior_flattening(x, 1)`` by the fixed signed
    permutation of column blocks ``HODGE_M3``.
    """
    _require_m3_symmetric(x)
    n = x.n
    psi = exterior_flattening(x, 1).matrix
    out = [[Fraction(0)] * (3 * n) for _ in range(3 * n)]
    for blk, pos, sign in HODGE_M3:
        for r in range(3 * n):
            src = psi.rows[r]
            dst = out[r]
            for b in range(n):
                v = src[blk * n + b]
                if v:
                    dst[pos * n + b] = sign * v
    return ExactMatrix(out, ncols=3 * n)


# block (row, col) -> (sign, slice index) of the skew form, 0-based slices
PFAFFIAN_BLOCKS = {
    (0, 1): (1, 2), (0, 2): (-1, 1),
    (1, 0): (-1, 2), (1, 2): (1, 0),
    (2, 0): (1, 1), (2, 1): (-1, 0),
}
