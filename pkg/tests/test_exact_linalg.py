from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from kappaflat.exact_linalg import (DEFAULT_PRIME, ExactMatrix, LinalgError, determinant,
                                    even_rank, pfaffian, pivots, rank, skew_pivots)
from kappaflat.tensor_core import SplitMix64


# --- independent oracles ----------------------------------------------------

def laplace_det(M):
    """Cofactor expansion along the first row."""
    n = len(M)
    if n == 0:
        return 1
    total = 0
    for c in range(n):
        if M[0][c]:
            minor = [row[:c] + row[c + 1:] for row in M[1:]]
            total += (-1) ** c * M[0][c] * laplace_det(minor)
    return total


def gauss_rank(M):
    """Textbook rational row reduction with column-first pivoting."""
    A = [[Fraction(v) for v in row] for row in M]
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            f = A[i][c] / A[r][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def matching_pfaffian(M):
    """Sum over perfect matchings with crossing-number signs."""
    n = len(M)

    def rec(items):
        if not items:
            return 1
        i = items[0]
        total = 0
        for q, j in enumerate(items[1:]):
            rest = items[1:q + 1] + items[q + 2:]
            total += (-1) ** q * M[i][j] * rec(rest)
        return total

    return rec(list(range(n)))


def perm_det(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        t = (-1) ** inv
        for i in range(n):
            t *= M[i][perm[i]]
        total += t
    return total


def rand_matrix(rng, r, c, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]


def rand_skew(rng, n, lo=-5, hi=5):
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = rng.randint(lo, hi)
            M[j][i] = -M[i][j]
    return M


# --- rank ---------------------------------------------------------------------

def test_rank_examples():
    assert rank(ExactMatrix.identity(5)) == 5
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank(ExactMatrix.zeros(3, 4)) == 0
    assert rank(ExactMatrix.zeros(0, 0)) == 0


@pytest.mark.parametrize("seed", range(20))
def test_rank_of_product_is_inner_dimension(seed):
    rng = SplitMix64(seed)
    n, r = 6, 1 + seed % 5
    A = ExactMatrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(r)]
                     for _ in range(n)])
    B = ExactMatrix(rand_matrix(rng, r, n))
    P = A @ B
    assert rank(P) == gauss_rank(P.to_lists())
    assert rank(P) <= r


@pytest.mark.parametrize("seed", range(30))
def test_rank_matches_oracle_and_transpose(seed):
    rng = SplitMix64(100 + seed)
    r, c = rng.randint(1, 7), rng.randint(1, 7)
    M = ExactMatrix(rand_matrix(rng, r, c, -2, 2))
    assert rank(M) == gauss_rank(M.to_lists()) == rank(M.T)


@pytest.mark.parametrize("seed", range(30))
def test_rank_mod_p_bounded_by_rational_rank(seed):
    rng = SplitMix64(200 + seed)
    M = ExactMatrix(rand_matrix(rng, 6, 7, -3, 3))
    for p in (2, 3, 5, DEFAULT_PRIME):
        assert rank(M.mod(p)) <= rank(M)
    assert rank(M.mod(DEFAULT_PRIME)) == rank(M)


def test_pivot_submatrices_are_nonsingular():
    rng = SplitMix64(7)
    for _ in range(20):
        M = ExactMatrix(rand_matrix(rng, 5, 8, -1, 1))
        pr, pc = pivots(M)
        assert len(pr) == rank(M)
        for t in range(1, len(pr) + 1):
            assert determinant(M.submatrix(pr[:t], pc[:t])) != 0


# --- determinant ----------------------------------------------------------------

def test_determinant_examples():
    assert determinant(ExactMatrix.identity(4)) == 1
    assert determinant([[2, 0], [0, 3]]) == 6
    with pytest.raises(LinalgError):
        determinant([[1, 2, 3]])


@pytest.mark.parametrize("seed", range(25))
def test_determinant_matches_cofactor_expansion(seed):
    rng = SplitMix64(300 + seed)
    M = rand_matrix(rng, 5, 5, -6, 6)
    assert determinant(M) == laplace_det(M)


def test_determinant_with_fractions_and_mod_p():
    M = [[Fraction(1, 2), 3], [Fraction(-2, 3), 5]]
    assert determinant(M) == Fraction(5, 2) + 2
    p = 101
    assert determinant(ExactMatrix(M, p=p)) == (Fraction(9, 2).numerator * pow(2, -1, p)) % p


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=16, max_size=16))
def test_determinant_matches_permutation_sum(vals):
    M = [vals[4 * i:4 * i + 4] for i in range(4)]
    assert determinant(M) == perm_det(M)


# --- Pfaffian -------------------------------------------------------------------

def test_pfaffian_examples():
    assert pfaffian([[0, 7], [-7, 0]]) == 7
    J = [[0] * 6 for _ in range(6)]
    for b in range(3):
        J[2 * b][2 * b + 1], J[2 * b + 1][2 * b] = 1, -1
    assert pfaffian(J) == 1
    assert pfaffian(ExactMatrix.zeros(0, 0)) == 1


def test_pfaffian_rejects_non_skew():
    with pytest.raises(LinalgError, match="not skew-symmetric"):
        pfaffian([[0, 1], [1, 0]])
    with pytest.raises(LinalgError, match="not skew-symmetric"):
        pfaffian(ExactMatrix.zeros(3, 3))
    with pytest.raises(LinalgError):
        pfaffian([[1, 1], [-1, 0]])


@pytest.mark.parametrize("seed", range(20))
def test_pfaffian_matches_matching_expansion(seed):
    rng = SplitMix64(400 + seed)
    n = 2 * rng.randint(1, 4)
    M = rand_skew(rng, n, -2, 2)
    assert pfaffian(M) == matching_pfaffian(M)


@pytest.mark.parametrize("seed", range(10))
def test_pfaffian_squared_is_determinant_8x8(seed):
    M = rand_skew(SplitMix64(500 + seed), 8)
    assert pfaffian(M) ** 2 == determinant(M)


@pytest.mark.parametrize("seed", range(10))
def test_pfaffian_congruence(seed):
    rng = SplitMix64(600 + seed)
    n = 2 * rng.randint(1, 4)
    M = ExactMatrix(rand_skew(rng, n))
    P = ExactMatrix(rand_matrix(rng, n, n, -2, 2))
    assert pfaffian(P.T @ M @ P) == determinant(P) * pfaffian(M)


def test_pfaffian_mod_p_agrees():
    p = 10007
    M = rand_skew(SplitMix64(9), 6)
    assert pfaffian(ExactMatrix(M, p=p)) == pfaffian(M) % p


def test_even_rank_and_principal_witness():
    assert even_rank(ExactMatrix.zeros(4, 4)) == 0
    rng = SplitMix64(11)
    for _ in range(15):
        # skew matrix of rank <= 4 from a 2-form of rank 2 pulled back
        n = 7
        U = ExactMatrix(rand_matrix(rng, 4, n, -3, 3))
        J = ExactMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        M = U.T @ J @ U
        r = even_rank(M)
        assert r % 2 == 0
        assert r == rank(M)
        pairs = skew_pivots(M)
        for t in range(1, len(pairs) + 1):
            idx = sorted(i for pr in pairs[:t] for i in pr)
            assert pfaffian(M.submatrix(idx, idx)) != 0
