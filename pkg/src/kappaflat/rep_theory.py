"""Partitions, Schur module dimensions, Littlewood-Richardson and Kronecker
coefficients, and the Schur module decompositions of the kappa ideals.

Decompositions are reported as lists of :class:`SchurModuleSummand`; the
``dimension`` of a summand already includes its multiplicity.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Optional

MAX_KRONECKER_DEGREE = 12


class RepError(ValueError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of positive ints (trailing zeros dropped)."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise RepError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def part(self, i):
        return self[i] if i < len(self) else 0

    def conjugate(self):
        return conjugate(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"

    def __str__(self):
        return ",".join(map(str, self)) if self else "0"


@lru_cache(maxsize=None)
def _partitions(d, max_part):
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(d, max_length=None, max_part=None):
    """Partitions of ``d`` in reverse lexicographic order, optionally bounded."""
    for lam in _partitions(d, d if max_part is None else max_part):
        if max_length is None or len(lam) <= max_length:
            yield Partition(lam)


def conjugate(lam):
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > i) for i in range(lam[0]))


def complement(lam, l, rows):
    """``(l - lam_rows, ..., l - lam_1)``, or ``None`` if ``lam_1 > l``.

    This is the partition of ``S_lam U* (x) (det U)^l`` for ``dim U = rows``.
    """
    lam = Partition(lam)
    if len(lam) > rows:
        raise RepError(f"{lam} has more than {rows} parts")
    if lam and lam[0] > l:
        return None
    padded = list(lam) + [0] * (rows - len(lam))
    return Partition(l - p for p in reversed(padded))


def schur_dim(lam, n):
    """Weyl dimension of S_lam(C^n); 0 if ``lam`` has more than ``n`` parts."""
    lam = Partition(lam)
    if len(lam) > n:
        return 0
    lp = list(lam) + [0] * (n - len(lam))
    num = prod(lp[i] - lp[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def _contains(outer, inner):
    return len(inner) <= len(outer) and all(outer[i] >= inner[i] for i in range(len(inner)))


@lru_cache(maxsize=None)
def _lr(lam, mu, nu):
    """Count LR tableaux of shape nu/lam and content mu.

    Cells are filled in reading order (rows top to bottom, right to left);
    the reading word must be a lattice word, rows weakly increase and
    columns strictly increase.
    """
    rows = len(nu)
    lamp = list(lam) + [0] * (rows - len(lam))
    cells = [(r, c) for r in range(rows) for c in range(nu[r] - 1, lamp[r] - 1, -1)]
    filling = {}
    counts = [0] * len(mu)

    def rec(idx):
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        hi = len(mu) - 1
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 0
        above = filling.get((r - 1, c))
        if above is not None:
            lo = above + 1
        # an entry e in row r needs e <= r for a lattice word
        hi = min(hi, r)
        total = 0
        for e in range(lo, hi + 1):
            if counts[e] >= mu[e]:
                continue
            if e > 0 and counts[e - 1] <= counts[e]:
                continue
            counts[e] += 1
            filling[(r, c)] = e
            total += rec(idx + 1)
            del filling[(r, c)]
            counts[e] -= 1
        return total

    return rec(0)


def lr_coefficient(lam, mu, nu):
    """Littlewood-Richardson coefficient ``c^nu_{lam, mu}``."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if nu.size != lam.size + mu.size or not _contains(nu, lam):
        return 0
    return _lr(lam, mu, nu)


def _beta(lam):
    L = len(lam)
    return frozenset(lam[i] + (L - 1 - i) for i in range(L))


def _from_beta(beta):
    b = sorted(beta, reverse=True)
    L = len(b)
    return Partition(b[i] - (L - 1 - i) for i in range(L))


@lru_cache(maxsize=None)
def _chi(lam, mu):
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    beta = _beta(lam)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in beta:
            continue
        # removing a rim hook of length k = moving a bead from b to t;
        # its height is the number of beads jumped over
        height = sum(1 for c in beta if t < c < b)
        new = _from_beta((beta - {b}) | {t})
        total += (-1) ** height * _chi(new, rest)
    return total


def sn_character(lam, class_mu):
    """chi^lam on the class of cycle type ``class_mu`` (Murnaghan-Nakayama)."""
    lam, mu = Partition(lam), Partition(class_mu)
    if lam.size != mu.size:
        raise RepError(f"size mismatch: |{lam}| != |{mu}|")
    return _chi(lam, mu)


def z_centralizer(mu):
    """Order of the centralizer of a permutation of cycle type ``mu``."""
    mu = Partition(mu)
    out = 1
    for part in set(mu):
        c = mu.count(part)
        out *= part ** c * factorial(c)
    return out


@lru_cache(maxsize=None)
def _kron(pi, lam, mu):
    d = sum(pi)
    total = Fraction(0)
    for cls in partitions(d):
        a = _chi(pi, cls)
        if not a:
            continue
        b = _chi(lam, cls)
        if not b:
            continue
        total += Fraction(a * b * _chi(mu, cls), z_centralizer(cls))
    assert total.denominator == 1
    return int(total)


def kronecker_coefficient(pi, lam, mu):
    """``K_{pi,lam,mu} = (1/d!) sum_g chi^pi(g) chi^lam(g) chi^mu(g)``."""
    pi, lam, mu = Partition(pi), Partition(lam), Partition(mu)
    d = pi.size
    if lam.size != d or mu.size != d:
        raise RepError("Kronecker coefficient needs partitions of one size")
    if d > MAX_KRONECKER_DEGREE:
        raise RepError(f"degree {d} exceeds the character-table bound {MAX_KRONECKER_DEGREE}")
    # symmetric in its arguments; canonical order improves cache reuse
    return _kron(*sorted((pi, lam, mu)))


@dataclass(frozen=True)
class SchurModuleSummand:
    U: Partition
    V: Partition
    W: Optional[Partition]
    multiplicity: int
    dimension: int

    def to_dict(self):
        d = {"U": list(self.U), "V": list(self.V)}
        if self.W is not None:
            d["W"] = list(self.W)
        d["mult"] = self.multiplicity
        d["dim"] = str(self.dimension)
        return d

    def __str__(self):
        s = f"S_{{{self.U}}}S_{{{self.V}}}"
        if self.W is not None:
            s += f"S_{{{self.W}}}"
        return s + (f"^{self.multiplicity}" if self.multiplicity > 1 else "")


def total_dimension(summands):
    return sum(s.dimension for s in summands)


def decompose_kappa0(m, n, r):
    """Generators of I_{kappa_0 <= r} for U* (x) S^2 V*, degree r+1:
    ``S_pi U (x) S_{pi' + 1^{r+1}} V`` over partitions ``pi`` of ``r+1``."""
    if r < 1:
        raise RepError("r must be at least 1")
    out = []
    for pi in partitions(r + 1, max_length=m):
        pc = list(conjugate(pi)) + [0] * (r + 1 - pi[0])
        V = Partition(p + 1 for p in pc)
        if len(V) > n:
            continue
        out.append(SchurModuleSummand(pi, V, None, 1, schur_dim(pi, m) * schur_dim(V, n)))
    return out


def decompose_kappa1_sym(n, r):
    """Degree r+1 generators of the Pfaffian ideal I_{kappa_1 <= 2r}, dim U = 3:
    ``S_pi U (x) S_{lam'} V`` with ``lam = (r+1)^3 - pi`` (reversed)."""
    if r < 1:
        raise RepError("r must be at least 1")
    out = []
    for pi in partitions(r + 1, max_length=3):
        lam = complement(pi, r + 1, 3)
        if lam is None:
            continue
        V = conjugate(lam)
        if len(V) > n:
            continue
        out.append(SchurModuleSummand(pi, V, None, 1, schur_dim(pi, 3) * schur_dim(V, n)))
    return out


def decompose_kappa1_nonsym_bound(n, k, c):
    """Upper bound for the degree c+1 generators of I_{kappa_1 <= c} on
    C^3 (x) C^n (x) C^k: each ``S_pi U S_lam V S_mu W`` with multiplicity
    ``min(c^nu_{lam', mu'}, K_{pi,lam,mu})`` where ``nu = (c+1)^3 - pi``."""
    d = c + 1
    if c < 1:
        raise RepError("c must be at least 1")
    if d > MAX_KRONECKER_DEGREE:
        raise RepError(f"degree {d} exceeds the Kronecker bound {MAX_KRONECKER_DEGREE}")
    # lam' and mu' need at most 3 parts, i.e. lam_1, mu_1 <= 3
    lams = [lam for lam in partitions(d, max_length=n, max_part=3)]
    mus = [mu for mu in partitions(d, max_length=k, max_part=3)]
    out = []
    for pi in partitions(d, max_length=3):
        nu = complement(pi, d, 3)
        if nu is None:
            continue
        dim_pi = schur_dim(pi, 3)
        for lam in lams:
            lc = conjugate(lam)
            for mu in mus:
                lr = lr_coefficient(lc, conjugate(mu), nu)
                if not lr:
                    continue
                mult = min(lr, kronecker_coefficient(pi, lam, mu))
                if mult:
                    dim = mult * dim_pi * schur_dim(lam, n) * schur_dim(mu, k)
                    out.append(SchurModuleSummand(pi, lam, mu, mult, dim))
    return out
