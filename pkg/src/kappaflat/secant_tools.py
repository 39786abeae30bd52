"""Kappa vectors, border rank lower bounds, secant membership certificates,
subspace compression, the pencil locus P, inherited Pfaffian checks and
Terracini dimension probes.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .exact_linalg import (DEFAULT_PRIME, ExactMatrix, even_rank, pivots, rank,
                           skew_pivots)
from .exterior_flatten import exterior_flattening, pfaffian_form
from .ideal_span import det_dp
from .tensor_core import (SplitMix64, Tensor3, TensorError, ambient_dim, project_u,
                          slices)

THEOREM_MAX_R = 5


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class KappaVector:
    values: tuple

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if isinstance(other, KappaVector):
            return self.values == other.values
        return self.values == tuple(other)

    def __hash__(self):
        return hash(self.values)


def kappa(x):
    """``(rank psi_0, ..., rank psi_{m-1})``."""
    return KappaVector(tuple(rank(exterior_flattening(x, j).matrix) for j in range(x.m)))


def border_rank_lower_bound(x, kap=None):
    kap = kappa(x) if kap is None else kap
    m = x.m
    return max(-(-kap[j] // comb(m - 1, j)) for j in range(m))


@dataclass(frozen=True)
class MembershipCertificate:
    r: int
    member: bool
    kappa: KappaVector
    theorem_backed: bool
    violated_stage: Optional[str] = None
    witness_rows: Optional[tuple] = None
    witness_cols: Optional[tuple] = None
    witness_principal: Optional[tuple] = None

    def to_dict(self):
        d = {
            "r": self.r,
            "member": self.member,
            "theorem_backed": self.theorem_backed,
            "kappa": list(self.kappa),
            "violated_stage": self.violated_stage,
        }
        if self.witness_rows is not None:
            d["witness_rows"] = list(self.witness_rows)
            d["witness_cols"] = list(self.witness_cols)
        if self.witness_principal is not None:
            d["witness_principal"] = list(self.witness_principal)
        return d


def certify_membership(x, r):
    """Decide membership in Sigma_{kappa <= (r, 2r, r)} (m = 3) or
    Sigma_{kappa_0 <= r} (m = 2) by exact rank tests.

    This equals membership in the r-th secant variety of the Segre-Veronese
    variety when m = 2, or m = 3 and r <= 5 (``theorem_backed``); otherwise
    it is only a necessary condition.  On failure the certificate carries a
    row/column subset of psi_0 with nonzero (r+1)-minor, or a principal
    subset of the skew form with nonzero (2r+2)-Pfaffian.  Indices are
    0-based in the fixed block ordering.
    """
    if not isinstance(x, Tensor3) or not x.symmetric or x.m not in (2, 3):
        raise CertificateError(
            "membership certificates need a partially symmetric tensor with m in {2, 3}; "
            "use kappa / border_rank_lower_bound otherwise")
    if r < 0:
        raise CertificateError("r must be nonnegative")
    kap = kappa(x)
    backed = x.m == 2 or r <= THEOREM_MAX_R
    if kap[0] > r:
        pr, pc = pivots(exterior_flattening(x, 0).matrix)
        return MembershipCertificate(r, False, kap, backed, "kappa0",
                                     witness_rows=tuple(sorted(pr[:r + 1])),
                                     witness_cols=tuple(sorted(pc[:r + 1])))
    if x.m == 3 and kap[1] > 2 * r:
        pairs = skew_pivots(pfaffian_form(x))
        idx = tuple(sorted(i for pair in pairs[:r + 1] for i in pair))
        return MembershipCertificate(r, False, kap, backed, "kappa1", witness_principal=idx)
    return MembershipCertificate(r, True, kap, backed)


def subspace_compress(x):
    """Compress a partially symmetric tensor into its smallest V-subspace.

    Returns ``(n_prime, B, y)`` with ``n_prime = kappa_0(x)``, ``B`` an
    ``n x n_prime`` basis of the span of the columns of all slices, and
    ``y`` the ``m x n_prime x n_prime`` tensor with ``A_i = B Y_i B^T``.
    ``B`` is in column echelon form: on the pivot rows ``R`` it is the
    identity, so ``Y_i`` is the principal submatrix ``A_i[R, R]``.
    """
    if not x.symmetric:
        raise TensorError("subspace compression needs a partially symmetric tensor")
    n = x.n
    flat = ExactMatrix([[v for A in x.entries for v in A[a]] for a in range(n)])
    prows, pcols = pivots(flat)
    n_prime = len(prows)
    if n_prime == 0:
        return 0, ExactMatrix.zeros(n, 0), Tensor3([[] for _ in range(x.m)], symmetric=True)
    R = sorted(prows)
    cols = flat.submatrix(range(n), pcols)
    square = cols.submatrix(R, range(n_prime))
    B = cols @ _inverse(square)
    y = Tensor3([[[A[a][b] for b in R] for a in R] for A in x.entries], symmetric=True)
    return n_prime, B, y


def expand_subspace(B, y):
    """Inverse of :func:`subspace_compress`: slices ``B Y_i B^T``."""
    return Tensor3([(B @ Y @ B.T).to_lists() for Y in slices(y)], symmetric=True)


def _inverse(M):
    n = M.nrows
    aug = [list(M.rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return ExactMatrix([row[n:] for row in aug], ncols=n)


def pencil_determinant(x):
    """Coefficients of ``det(t1 A1 + t2 A2 + t3 A3)`` keyed by exponent
    triples, zero coefficients omitted."""
    if x.m != 3:
        raise TensorError("the determinant pencil needs m = 3")
    if x.n != x.k:
        raise TensorError("the determinant pencil needs square slices")
    n = x.n
    ent = [[{(i,): x.entries[i][a][b] for i in range(3) if x.entries[i][a][b]}
            for b in range(n)] for a in range(n)]
    out = {}
    for mono, c in det_dp(ent).items():
        out[tuple(mono.count(i) for i in range(3))] = c
    return out


def det_pencil_vanishes(x):
    """True iff ``det(t1 A1 + t2 A2 + t3 A3)`` is identically zero."""
    if x.m != 3:
        raise TensorError("the determinant pencil needs m = 3")
    return not pencil_determinant(x)


def inherited_pfaffian_check(x, r, samples=3, seed=0):
    """Apply the kappa_1 <= 2r Pfaffian condition to 3-dimensional
    projections of U*: every coordinate triple plus ``samples`` random
    integer 3 x m projections.  A necessary condition for border rank <= r.
    """
    if not x.symmetric or x.m < 3:
        raise TensorError("inherited Pfaffian checks need a partially symmetric tensor with m >= 3")
    m = x.m
    projections = []
    for trip in combinations(range(m), 3):
        projections.append([[int(c == t) for c in range(m)] for t in trip])
    rng = SplitMix64(seed)
    for _ in range(samples):
        projections.append([[rng.randint(-9, 9) for _ in range(m)] for _ in range(3)])
    for g in projections:
        y = project_u(g, x)
        if even_rank(pfaffian_form(y)) > 2 * r:
            return False
    return True


def _tangent_rows(u, v, m, n, p):
    """Spanning set of the affine tangent space at u (x) v^2 in U* (x) S^2 V*."""
    idx = {}
    for i in range(m):
        for a in range(n):
            for b in range(a, n):
                idx[(i, a, b)] = len(idx)
    D = len(idx)
    rows = []
    # e_i (x) v^2
    for i in range(m):
        row = [0] * D
        for a in range(n):
            for b in range(a, n):
                row[idx[(i, a, b)]] = v[a] * v[b] % p
        rows.append(row)
    # u (x) (v w + w v) for w = f_c; the symmetric coordinate (a, b), a < b,
    # picks up v_a w_b + v_b w_a, and (a, a) picks up 2 v_a w_a
    for c in range(n):
        row = [0] * D
        for i in range(m):
            if not u[i]:
                continue
            for a in range(n):
                for b in range(a, n):
                    val = (v[a] * (b == c) + v[b] * (a == c)) if a != b else 2 * v[a] * (a == c)
                    if val:
                        row[idx[(i, a, b)]] = (row[idx[(i, a, b)]] + u[i] * val) % p
        rows.append(row)
    return rows


def terracini_dimension(m, n, r, trials=5, seed=0, p=DEFAULT_PRIME):
    """Projective dimension of the r-th secant variety of P^{m-1} x P^{n-1}
    embedded by O(1, 2), from the rank of r stacked random tangent spaces
    over F_p (max over ``trials``)."""
    if m < 1 or n < 1 or r < 1:
        raise ValueError("m, n, r must be positive")
    rng = SplitMix64(seed)
    best = -1
    D = ambient_dim(m, n)
    for _ in range(trials):
        rows = []
        for _ in range(r):
            u = [rng.next() % p for _ in range(m)]
            v = [rng.next() % p for _ in range(n)]
            rows.extend(_tangent_rows(u, v, m, n, p))
        best = max(best, rank(ExactMatrix(rows, p=p, ncols=D)) - 1)
        if best == D - 1:
            break
    return best


def expected_secant_dimension(m, n, r):
    """``min(r (dim X + 1) - 1, N)`` for X = P^{m-1} x P^{n-1} in O(1, 2)."""
    return min(r * (m + n - 1) - 1, ambient_dim(m, n) - 1)


def generic_border_rank(m, n, trials=5, seed=0, p=DEFAULT_PRIME):
    """Least r whose secant variety fills the ambient space (Terracini)."""
    top = ambient_dim(m, n) - 1
    r = 1
    while terracini_dimension(m, n, r, trials, seed, p) < top:
        r += 1
    return r
