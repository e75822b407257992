import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arkit import repmod as rm
from arkit.algebra import (AlgebraError, Quiver, build, from_json,
                           is_symmetric_nakayama, load, nakayama, path_algebra)


def _times(alg, x, y):
    """Product of two linear combinations of basis elements."""
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in alg.multiply(i, j).items():
                out[k] = (out.get(k, 0) + a * b * c) % alg.p
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_nakayama_dimension(m, t):
    assert nakayama(m, t).dimension == m * t


def test_three_vertex_example_dimension(three_vertex):
    # P(1) has basis e1, δ, β, αδ; P(2) has e2, α, βα; P(3) has e3, γ, δγ
    assert three_vertex.dimension == 10
    assert three_vertex.num_vertices == 3
    assert three_vertex.is_selfinjective


@pytest.mark.parametrize("m,t", [(1, 2), (2, 2), (2, 3), (3, 4), (3, 2)])
def test_nakayama_permutation(m, t):
    perm = nakayama(m, t).nakayama_perm()
    assert perm == {v: (v + t - 1) % m for v in range(m)}


@pytest.mark.parametrize("m,t", [(1, 2), (2, 3), (3, 3), (2, 2)])
def test_projectives_and_injectives_agree_as_multisets(m, t):
    alg = nakayama(m, t)
    projs = [alg.proj(v) for v in range(m)]
    injs = [alg.inj(v) for v in range(m)]
    for pv in projs:
        assert sum(rm.is_iso(pv, iv) for iv in injs) == 1


def test_path_algebra_of_a2_is_not_selfinjective():
    q = Quiver.from_labels(["1", "2"], [("a", "1", "2")])
    alg = path_algebra(q)
    assert alg.dimension == 3
    assert not alg.is_selfinjective
    with pytest.raises(AlgebraError):
        alg.require_selfinjective()


@given(st.integers(1, 4), st.integers(2, 6))
@settings(max_examples=25, deadline=None)
def test_symmetric_iff_m_divides_t_minus_one(m, t):
    alg = nakayama(m, t)
    assert alg.is_symmetric() == is_symmetric_nakayama(m, t) == ((t - 1) % m == 0)


def test_three_vertex_algebra_is_not_symmetric(three_vertex):
    # the Nakayama permutation swaps 2 and 3, so no symmetric form can exist
    assert three_vertex.nakayama_perm() == {0: 0, 1: 2, 2: 1}
    assert not three_vertex.is_symmetric()


@pytest.mark.parametrize("alg_name", ["nakayama:2,3", "nakayama:3,2", "example-3.6"])
def test_multiplication_is_associative(alg_name):
    alg = load(alg_name)
    n = alg.dimension
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = _times(alg, _times(alg, {i: 1}, {j: 1}), {k: 1})
                right = _times(alg, {i: 1}, _times(alg, {j: 1}, {k: 1}))
                assert left == right


def test_idempotents_are_units(l22):
    for v in range(l22.num_vertices):
        e = l22.idempotent_index(v)
        for b in l22.paths_between(v, 0) + l22.paths_between(v, 1):
            assert l22.multiply(b, e) == {b: 1}


@pytest.mark.parametrize("alg_name", ["nakayama:2,3", "example-3.6"])
def test_json_round_trip_and_determinism(alg_name):
    alg = load(alg_name)
    text = json.dumps(alg.to_json())
    again = from_json(json.loads(text))
    assert [b.arrows for b in again.basis] == [b.arrows for b in alg.basis]
    n = alg.dimension
    table = [[alg.multiply(i, j) for j in range(n)] for i in range(n)]
    assert table == [[again.multiply(i, j) for j in range(n)] for i in range(n)]


def test_load_from_file(tmp_path):
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(nakayama(1, 3).to_json()))
    assert load(str(path)).dimension == 3


@pytest.mark.parametrize("bad", [
    {},
    {"quiver": {"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "9"}]}},
    {"quiver": {"vertices": ["1"], "arrows": []}, "relations": [[{"coeff": 1, "path": ["zz"]}]]},
])
def test_malformed_algebra_description(bad):
    with pytest.raises(AlgebraError):
        from_json(bad)


def test_bad_named_algebra():
    with pytest.raises(AlgebraError):
        load("nakayama:x")
    with pytest.raises(AlgebraError):
        nakayama(2, 1)
    with pytest.raises(AlgebraError):
        load("/nonexistent/alg.json")


def test_relation_reduction_in_three_vertex_algebra(three_vertex):
    alg = three_vertex
    q = alg.quiver
    a, b, g, d = (q.arrow_index(x) for x in ("alpha", "beta", "gamma", "delta"))
    # αδ = γβ, both nonzero; δα = βγ = 0
    assert alg.reduce((d, a)) == alg.reduce((b, g))
    assert alg.reduce((d, a))
    assert alg.reduce((a, d)) == {}
    assert alg.reduce((g, b)) == {}


def test_build_rejects_unknown_relation_arrow():
    q = Quiver.from_labels(["1"], [("x", "1", "1")])
    with pytest.raises(AlgebraError):
        build(q, [[(1, ["y"])]])
