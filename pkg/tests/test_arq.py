import functools
import json
from importlib import resources

import pytest

from arkit import arq
from arkit import artrans as at
from arkit import morcat as mc
from arkit.algebra import nakayama


@functools.lru_cache(maxsize=None)
def _quiver(m, t, n):
    return arq.knit(nakayama(m, t), n)


def _fixture(name):
    path = resources.files("arkit") / "fixtures" / "quivers" / f"{name}.json"
    return json.loads(path.read_text())


@pytest.mark.parametrize("n", [2, 3, 4])
def test_counts_for_dual_numbers(n):
    assert _quiver(1, 2, n).counts() == (n, n * (n + 1) // 2)


@pytest.mark.parametrize("mtn,expect", [((1, 3, 3), (3, 24)), ((2, 2, 2), (4, 6)), ((2, 2, 3), (6, 12)),
                                        ((1, 3, 2), (2, 8))])
def test_counts_for_other_algebras(mtn, expect):
    assert _quiver(*mtn).counts() == expect


@pytest.mark.parametrize("name,mtn", [("s3-kx2", (1, 2, 3)), ("s4-kx2", (1, 2, 4)), ("s2-l22", (2, 2, 2)),
                                      ("s3-l22", (2, 2, 3)), ("s3-kx3", (1, 3, 3))])
def test_quiver_matches_reference(name, mtn):
    res = arq.compare_with_fixture(_quiver(*mtn), _fixture(name))
    assert res["nodes"] and res["solid"] and res["dotted"], res


@pytest.mark.parametrize("mtn", [(1, 2, 3), (2, 2, 3), (1, 3, 3)])
def test_mesh_relations(mtn):
    assert _quiver(*mtn).mesh_ok()


def test_mesh_detects_a_broken_quiver():
    q = arq.knit(nakayama(1, 2), 2)
    q.solid = dict(q.solid)
    k = next(iter(q.solid))
    q.solid[k] += 1
    assert not q.mesh_ok()


@pytest.mark.parametrize("mtn", [(1, 2, 3), (2, 2, 2)])
def test_knitting_is_closed(mtn):
    q = _quiver(*mtn)
    objs = [nd.obj for nd in q.nodes]

    def known(x):
        return any(mc.is_iso(x, y) for y in objs)

    for nd in q.nodes:
        if nd.projective:
            continue
        seq = at.ar_sequence_s_direct(nd.obj)
        assert known(seq.left)
        assert all(known(y) for y, _ in seq.middle_summands())
        assert known(at.tau_s_inv(nd.obj)) or nd.injective


@pytest.mark.parametrize("n", [2, 3, 4])
def test_translate_orbits_divide_the_period(n):
    q = _quiver(1, 2, n)
    step = dict(q.dotted)
    for start in step:
        k, cur = 0, start
        while True:
            cur = step[cur]
            k += 1
            if cur == start:
                break
        assert (2 * (n + 1)) % k == 0


def test_node_set_is_closed_under_translates():
    q = _quiver(2, 2, 3)
    objs = [nd.obj for nd in q.nodes]
    for nd in q.nodes:
        if not nd.projective:
            assert any(mc.is_iso(at.tau_s(nd.obj), y) for y in objs)
            assert any(mc.is_iso(at.tau_s_inv(nd.obj), y) for y in objs)


def test_injective_nodes_start_no_sequence():
    # an injective object is never the left end of an almost split sequence
    q = _quiver(1, 3, 2)
    lefts = {b for _, b in q.dotted}
    assert not any(nd.injective and nd.index in lefts for nd in q.nodes)


def test_irreducible_counts_match_arrows():
    q = _quiver(1, 2, 3)
    known = [nd.obj for nd in q.nodes]
    for (a, b), mult in q.solid.items():
        assert arq.irreducible_count(q.nodes[a].obj, q.nodes[b].obj, known) == mult
    first = q.nodes[0].obj
    assert arq.irreducible_count(first, first, known) == 0


def test_module_category_quiver():
    q = arq.knit(nakayama(2, 3), 1, "mod")
    assert q.counts() == (2, 4)
    assert q.mesh_ok()


def test_epimorphism_quiver_is_transported():
    qs = _quiver(1, 2, 3)
    qf = arq.knit(nakayama(1, 2), 3, "F")
    assert qf.counts() == qs.counts()
    assert all(nd.obj.is_epi() for nd in qf.nodes)
    assert qf.solid == qs.solid and qf.dotted == qs.dotted


def test_exports_are_deterministic():
    a = arq.knit(nakayama(1, 2), 3)
    b = arq.knit(nakayama(1, 2), 3)
    assert a.to_json() == b.to_json()
    assert a.to_dot() == b.to_dot()
    dot = a.to_dot()
    assert dot.startswith("digraph") and dot.count("style=dashed") == 6
    data = json.loads(a.to_json())
    assert len(data["nodes"]) == 9 and data["category"] == "S"


def test_budget_guard():
    with pytest.raises(arq.BudgetExceeded):
        arq.knit(nakayama(1, 2), 4, max_objects=5)


def test_unknown_category():
    with pytest.raises(ValueError):
        arq.knit(nakayama(1, 2), 2, "X")
