import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kappaflat.exact_linalg import ExactMatrix
from kappaflat.secant_tools import border_rank_lower_bound, kappa
from kappaflat.tensor_core import (SplitMix64, Tensor3, TensorError, ambient_dim, apply_gl,
                                   dumps_tensor, example_tensor, load_tensor, loads_tensor,
                                   outer, parse_rational, project_u, random_invertible,
                                   random_rank_r, random_tensor, rank_one, save_tensor, slices,
                                   tensor_to_dict, zero_tensor)


def test_splitmix64_reference_vectors():
    # published outputs of the reference C implementation
    assert SplitMix64(0).next() == 0xE220A8397B1DCDAF
    r = SplitMix64(1234567)
    assert [r.next() for _ in range(3)] == [6457827717110365317, 3203168211198807973,
                                            9817491932198370423]


def test_randint_range_and_coverage():
    r = SplitMix64(5)
    seen = {r.randint(-9, 9) for _ in range(2000)}
    assert seen == set(range(-9, 10))


def test_slices_of_small_examples():
    x = rank_one(2, 2)
    S = slices(x)
    assert [s.to_lists() for s in S] == [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]
    y = outer([1, 2], [1, -1])
    assert slices(y)[1].to_lists() == [[2, -2], [-2, 2]]
    z = outer([1], [1, 0], [0, 1, 0])
    assert (z.m, z.n, z.k, z.symmetric) == (1, 2, 3, False)
    assert z.entries[0][0][1] == 1


def test_example_tensor_lookup():
    x = example_tensor("ex23_kappa464")
    assert (x.m, x.n, x.symmetric) == (3, 4, True)
    assert example_tensor("rank_one(4,3)") == rank_one(4, 3)
    assert example_tensor("zero(2,3,4)") == zero_tensor(2, 3, 4)
    with pytest.raises(TensorError, match="unknown example"):
        example_tensor("nope")
    with pytest.raises(TensorError, match="unknown example"):
        example_tensor("rank_one(1,2,3)")


def test_tensor_validation():
    with pytest.raises(TensorError):
        Tensor3([])
    with pytest.raises(TensorError):
        Tensor3([[[1, 2]], [[1]]])
    with pytest.raises(TensorError, match="not symmetric"):
        Tensor3([[[0, 1], [2, 0]]], symmetric=True)
    with pytest.raises(TensorError):
        Tensor3([[[0, 1, 2], [1, 0, 0]]], symmetric=True)


def test_random_rank_r_is_deterministic():
    assert random_rank_r(3, 4, 2, 9) == random_rank_r(3, 4, 2, 9)
    assert random_rank_r(3, 4, 2, 9) != random_rank_r(3, 4, 2, 10)
    assert random_rank_r(3, 4, 0, 1).is_zero()
    x = random_rank_r(3, 2, 2, 4, symmetric=False, k=5)
    assert (x.n, x.k, x.symmetric) == (2, 5, False)


def test_random_rank_r_term_order():
    # one term: u then v drawn from the same stream
    rng = SplitMix64(42)
    u = [rng.randint(-9, 9) for _ in range(3)]
    v = [rng.randint(-9, 9) for _ in range(4)]
    assert random_rank_r(3, 4, 1, 42) == outer(u, v)


def test_apply_gl_identity_and_composition():
    x = random_tensor(3, 3, 1)
    I3 = ExactMatrix.identity(3)
    assert apply_gl(I3, I3, x) == x
    g1, h1 = random_invertible(3, 2), random_invertible(3, 3)
    g2, h2 = random_invertible(3, 4), random_invertible(3, 5)
    lhs = apply_gl(g2, h2, apply_gl(g1, h1, x))
    rhs = apply_gl(g2 @ g1, h2 @ h1, x)
    assert lhs == rhs


def test_apply_gl_general_tensor():
    x = random_tensor(2, 2, 3, symmetric=False, k=3)
    g, h, h2 = random_invertible(2, 1), random_invertible(2, 2), random_invertible(3, 3)
    y = apply_gl(g, h, x, h2)
    # entrywise definition
    for i in range(2):
        for a in range(2):
            for b in range(3):
                v = sum(g[i, ip] * h[a, ap] * h2[b, bp] * x.entries[ip][ap][bp]
                        for ip in range(2) for ap in range(2) for bp in range(3))
                assert y.entries[i][a][b] == v


def test_apply_gl_errors():
    x = random_tensor(2, 2, 1)
    with pytest.raises(TensorError, match="singular"):
        apply_gl([[1, 0], [0, 0]], ExactMatrix.identity(2), x)
    with pytest.raises(TensorError):
        apply_gl(ExactMatrix.identity(3), ExactMatrix.identity(2), x)
    with pytest.raises(TensorError):
        apply_gl(ExactMatrix.identity(2), ExactMatrix.identity(2), x, ExactMatrix.identity(2))


@pytest.mark.parametrize("seed", range(6))
def test_kappa_is_group_invariant(seed):
    x = random_rank_r(3, 4, 1 + seed % 4, seed)
    y = apply_gl(random_invertible(3, 10 + seed), random_invertible(4, 20 + seed), x)
    assert kappa(x) == kappa(y)


@pytest.mark.parametrize("seed", range(6))
def test_border_rank_bound_subadditive(seed):
    x = random_rank_r(3, 4, 1 + seed % 3, seed)
    y = random_rank_r(3, 4, 1 + (seed + 1) % 3, 100 + seed)
    assert border_rank_lower_bound(x + y) <= border_rank_lower_bound(x) + border_rank_lower_bound(y)


def test_project_u():
    x = random_tensor(3, 2, 7)
    y = project_u([[1, 1, 0]], x)
    assert y.m == 1
    assert y.entries[0] == tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(x.entries[0], x.entries[1]))


def test_ambient_dim():
    assert ambient_dim(3, 4) == 30
    assert ambient_dim(2, 3, 4, symmetric=False) == 24


# --- TensorFileV1 -----------------------------------------------------------

def test_file_roundtrip(tmp_path):
    x = Tensor3([[[Fraction(1, 2), -3], [-3, 0]], [[0, Fraction(-7, 5)], [Fraction(-7, 5), 2]]],
                symmetric=True)
    path = tmp_path / "t.json"
    save_tensor(x, path)
    assert load_tensor(path) == x
    d = json.loads(path.read_text())
    assert d["slices"][0][0] == ["1/2", "-3"]
    assert "k" not in d
    g = random_tensor(2, 2, 5, symmetric=False, k=3)
    assert loads_tensor(dumps_tensor(g)) == g
    assert tensor_to_dict(g)["k"] == 3


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-100, max_value=100, max_denominator=20),
                min_size=8, max_size=8))
def test_file_roundtrip_property(vals):
    x = Tensor3([[vals[0:2], vals[2:4]], [vals[4:6], vals[6:8]]])
    assert loads_tensor(dumps_tensor(x)) == x


def _doc(**over):
    d = {"version": 1, "m": 1, "n": 2, "symmetric": True, "slices": [[["1", "0"], ["0", "1"]]]}
    d.update(over)
    return json.dumps(d)


@pytest.mark.parametrize("text, message", [
    ("{", "line 1 column"),
    (_doc(version=2), "version"),
    (_doc(slices=[[["1", "x"], ["x", "1"]]]), r"slices\[0\]\[0\]\[1\]"),
    (_doc(slices=[[["1", "2/4"], ["2/4", "1"]]]), "lowest terms"),
    (_doc(slices=[[["1", "1/0"], ["1/0", "1"]]]), "zero denominator"),
    (_doc(slices=[[["1", 2], [2, "1"]]]), "rational string"),
    (_doc(slices=[[["1", "2"], ["3", "1"]]]), "not symmetric"),
    (_doc(n=3), "expected 3 rows"),
    (_doc(m=0), "positive integer"),
    (_doc(symmetric=False), "k"),
])
def test_file_parser_errors(text, message):
    with pytest.raises(TensorError, match=message):
        loads_tensor(text)


def test_parse_rational():
    assert parse_rational("-3/7") == Fraction(-3, 7)
    assert parse_rational("+5") == 5
    for bad in ("1.5", "", "1/", "a/b", "1/-2"):
        with pytest.raises(TensorError):
            parse_rational(bad)
