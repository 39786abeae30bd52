"""Exact-rational 3-tensors, named examples, seeded generators and GL actions.

A tensor ``x`` in U* (x) V* (x) W* is stored as ``m`` slices ``A_1..A_m``,
each an ``n x k`` matrix, so that ``x = sum_i e_i (x) A_i``.  Partially
symmetric tensors (U* (x) S^2 V*) have ``k == n`` and symmetric slices.

Random tensors use SplitMix64 (Steele, Lea & Flood 2014): a 64-bit
counter-based generator whose output depends only on the seed and the
draw index, so it is identical on every platform and Python version.
"""

import json
import re
from fractions import Fraction
from math import comb

from .exact_linalg import ExactMatrix, rank

MASK64 = (1 << 64) - 1


class TensorError(ValueError):
    pass


class SplitMix64:
    """SplitMix64 stream.  ``next()`` returns the next unsigned 64-bit word."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed):
        self.state = seed & MASK64

    def next(self):
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform integer in ``[lo, hi]`` by rejection (no modulo bias)."""
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            z = self.next()
            if z < limit:
                return lo + z % span


class Tensor3:
    """Immutable exact 3-tensor given by its slices.

    ``entries[i][a][b]`` is the coefficient of ``e_i (x) f_a (x) g_b``.
    """

    __slots__ = ("m", "n", "k", "symmetric", "entries")

    def __init__(self, entries, symmetric=False):
        ent = tuple(tuple(tuple(Fraction(v) for v in row) for row in sl) for sl in entries)
        m = len(ent)
        if m == 0:
            raise TensorError("tensor needs at least one slice")
        n = len(ent[0])
        k = len(ent[0][0]) if n else 0
        for i, sl in enumerate(ent):
            if len(sl) != n or any(len(row) != k for row in sl):
                raise TensorError(f"slice {i} is not {n}x{k}")
        if symmetric:
            if n != k:
                raise TensorError("symmetric tensor needs square slices")
            for i, sl in enumerate(ent):
                for a in range(n):
                    for b in range(a + 1, n):
                        if sl[a][b] != sl[b][a]:
                            raise TensorError(f"slice {i} is not symmetric at ({a}, {b})")
        self.m, self.n, self.k = m, n, k
        self.symmetric = bool(symmetric)
        self.entries = ent

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.symmetric == other.symmetric and self.entries == other.entries

    def __hash__(self):
        return hash((self.symmetric, self.entries))

    def __repr__(self):
        kind = "sym" if self.symmetric else "gen"
        return f"Tensor3(m={self.m}, n={self.n}, k={self.k}, {kind})"

    def __add__(self, other):
        if (self.m, self.n, self.k) != (other.m, other.n, other.k):
            raise TensorError("dimension mismatch")
        ent = [[[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]
               for A, B in zip(self.entries, other.entries)]
        return Tensor3(ent, symmetric=self.symmetric and other.symmetric)

    def __mul__(self, c):
        return Tensor3([[[v * c for v in r] for r in A] for A in self.entries],
                       symmetric=self.symmetric)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(v for A in self.entries for r in A for v in r)


def slices(x):
    """The ``m`` slices ``A_i`` as ``n x k`` exact matrices."""
    return [ExactMatrix(A, ncols=x.k) for A in x.entries]


def zero_tensor(m, n, k=None, symmetric=None):
    if symmetric is None:
        symmetric = k is None or k == n
    k = n if k is None else k
    return Tensor3([[[0] * k for _ in range(n)] for _ in range(m)], symmetric=symmetric)


def outer(u, v, w=None):
    """``u (x) v (x) w``; with ``w`` omitted this is ``u (x) v (x) v``."""
    sym = w is None
    w = v if sym else w
    return Tensor3([[[ui * va * wb for wb in w] for va in v] for ui in u], symmetric=sym)


def rank_one(m, n):
    """``e_1 (x) v_1 (x) v_1``."""
    e = [1] + [0] * (m - 1)
    f = [1] + [0] * (n - 1)
    return outer(e, f)


def ex23_kappa464():
    """``sum_{i=1..3} u_i (x) (v_1 v_{i+1} + v_{i+1} v_1)`` in C^3 (x) S^2 C^4.

    Lies on the Pfaffian locus kappa_1 <= 6 without lying in the third
    secant variety; its kappa vector is (4, 6, 4).
    """
    ent = []
    for i in range(3):
        A = [[0] * 4 for _ in range(4)]
        A[0][i + 1] = A[i + 1][0] = 1
        ent.append(A)
    return Tensor3(ent, symmetric=True)


_EXAMPLE_RE = re.compile(r"^(rank_one|zero)\((\d+(?:\s*,\s*\d+)*)\)$")


def example_tensor(name):
    """Look up a named tensor: ``ex23_kappa464``, ``rank_one(m,n)``, ``zero(m,n,k)``."""
    if name == "ex23_kappa464":
        return ex23_kappa464()
    mt = _EXAMPLE_RE.match(name.strip())
    if mt:
        args = [int(a) for a in mt.group(2).split(",")]
        if mt.group(1) == "rank_one" and len(args) == 2:
            return rank_one(*args)
        if mt.group(1) == "zero" and len(args) in (2, 3):
            return zero_tensor(*args)
    raise TensorError(f"unknown example {name!r}")


def random_rank_r(m, n, r, seed, symmetric=True, k=None):
    """Sum of ``r`` random rank-one terms with integer factors in [-9, 9].

    Draw order per term: ``u`` (m), ``v`` (n), then ``w`` (k) in the
    general case.
    """
    k = n if k is None else k
    if symmetric and k != n:
        raise TensorError("symmetric tensor needs k == n")
    rng = SplitMix64(seed)
    acc = [[[0] * k for _ in range(n)] for _ in range(m)]
    for _ in range(r):
        u = [rng.randint(-9, 9) for _ in range(m)]
        v = [rng.randint(-9, 9) for _ in range(n)]
        w = v if symmetric else [rng.randint(-9, 9) for _ in range(k)]
        for i in range(m):
            if not u[i]:
                continue
            for a in range(n):
                c = u[i] * v[a]
                if c:
                    row = acc[i][a]
                    for b in range(k):
                        row[b] += c * w[b]
    return Tensor3(acc, symmetric=symmetric)


def random_tensor(m, n, seed, symmetric=True, k=None, lo=-9, hi=9):
    """Tensor with independent uniform integer coordinates (a generic point)."""
    k = n if k is None else k
    rng = SplitMix64(seed)
    ent = [[[0] * k for _ in range(n)] for _ in range(m)]
    for i in range(m):
        for a in range(n):
            for b in range(a if symmetric else 0, k):
                ent[i][a][b] = rng.randint(lo, hi)
                if symmetric:
                    ent[i][b][a] = ent[i][a][b]
    return Tensor3(ent, symmetric=symmetric)


def random_invertible(n, seed, lo=-3, hi=3):
    """Seeded invertible integer matrix (resampled until nonsingular)."""
    rng = SplitMix64(seed)
    while True:
        M = ExactMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if rank(M) == n:
            return M


def _mat(g):
    return g if isinstance(g, ExactMatrix) else ExactMatrix(g)


def apply_gl(g, h, x, h2=None):
    """Act by ``(g, h, h2)`` in GL(U*) x GL(V*) x GL(W*).

    ``x'_{i,a,b} = sum g_{ii'} h_{aa'} h2_{bb'} x_{i',a',b'}``.  For a
    partially symmetric tensor the same ``h`` acts on both V factors and
    ``h2`` must be omitted.
    """
    g, h = _mat(g), _mat(h)
    if h2 is None:
        h2 = h
    else:
        h2 = _mat(h2)
        if x.symmetric:
            raise TensorError("partially symmetric tensors take a single V action")
    if g.shape != (x.m, x.m) or h.shape != (x.n, x.n) or h2.shape != (x.k, x.k):
        raise TensorError("group element has the wrong size")
    for M in (g, h, h2):
        if rank(M) < M.nrows:
            raise TensorError("singular group element")
    S = slices(x)
    new = []
    for i in range(x.m):
        acc = ExactMatrix.zeros(x.n, x.k)
        for ip in range(x.m):
            c = g[i, ip]
            if c:
                acc = acc + S[ip] * c
        new.append((h @ acc @ h2.T).to_lists())
    return Tensor3(new, symmetric=x.symmetric)


def project_u(g, x):
    """Contract the U factor with a (not necessarily square) ``m' x m`` matrix."""
    g = _mat(g)
    if g.ncols != x.m:
        raise TensorError("projection has the wrong width")
    S = slices(x)
    new = []
    for i in range(g.nrows):
        acc = ExactMatrix.zeros(x.n, x.k)
        for ip in range(x.m):
            if g[i, ip]:
                acc = acc + S[ip] * g[i, ip]
        new.append(acc.to_lists())
    return Tensor3(new, symmetric=x.symmetric)


def ambient_dim(m, n, k=None, symmetric=True):
    """Affine dimension of U* (x) S^2 V* (or U* (x) V* (x) W*)."""
    return m * comb(n + 1, 2) if symmetric else m * n * (n if k is None else k)


# --- TensorFileV1 -----------------------------------------------------------

_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def _fmt(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rational(s, where="value"):
    if not isinstance(s, str):
        raise TensorError(f"{where}: expected a rational string, got {type(s).__name__}")
    mt = _RAT_RE.match(s.strip())
    if not mt:
        raise TensorError(f"{where}: malformed rational {s!r}")
    num = int(mt.group(1))
    if mt.group(2) is None:
        return Fraction(num)
    den = int(mt.group(2))
    if den == 0:
        raise TensorError(f"{where}: zero denominator in {s!r}")
    v = Fraction(num, den)
    if v.denominator != den:
        raise TensorError(f"{where}: rational {s!r} is not in lowest terms")
    return v


def tensor_to_dict(x):
    d = {"version": 1, "m": x.m, "n": x.n}
    if not x.symmetric:
        d["k"] = x.k
    d["symmetric"] = x.symmetric
    d["slices"] = [[[_fmt(v) for v in row] for row in A] for A in x.entries]
    return d


def tensor_from_dict(d):
    if not isinstance(d, dict):
        raise TensorError("top level: expected a JSON object")
    if d.get("version") != 1:
        raise TensorError(f"version: unsupported value {d.get('version')!r}")
    for key in ("m", "n", "symmetric", "slices"):
        if key not in d:
            raise TensorError(f"{key}: missing field")
    m, n, sym = d["m"], d["n"], d["symmetric"]
    if not isinstance(sym, bool):
        raise TensorError("symmetric: expected a boolean")
    for key, val in (("m", m), ("n", n)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise TensorError(f"{key}: expected a positive integer")
    if sym:
        if "k" in d and d["k"] != n:
            raise TensorError("k: must equal n (or be omitted) for symmetric tensors")
        k = n
    else:
        k = d.get("k")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise TensorError("k: expected a positive integer")
    sl = d["slices"]
    if not isinstance(sl, list) or len(sl) != m:
        raise TensorError(f"slices: expected {m} slices")
    ent = []
    for i, A in enumerate(sl):
        if not isinstance(A, list) or len(A) != n:
            raise TensorError(f"slices[{i}]: expected {n} rows")
        rows = []
        for a, row in enumerate(A):
            if not isinstance(row, list) or len(row) != k:
                raise TensorError(f"slices[{i}][{a}]: expected {k} entries")
            rows.append([parse_rational(s, f"slices[{i}][{a}][{b}]") for b, s in enumerate(row)])
        ent.append(rows)
    try:
        return Tensor3(ent, symmetric=sym)
    except TensorError as e:
        raise TensorError(f"slices: {e}") from None


def dumps_tensor(x, indent=None):
    return json.dumps(tensor_to_dict(x), indent=indent)


def loads_tensor(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise TensorError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return tensor_from_dict(d)


def load_tensor(path):
    with open(path) as fh:
        return loads_tensor(fh.read())


def save_tensor(x, path, indent=None):
    with open(path, "w") as fh:
        fh.write(dumps_tensor(x, indent=indent))
        fh.write("\n")
