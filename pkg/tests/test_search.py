import copy
import json

import pytest

from cubeslides import search as srch
from cubeslides import slides as sl
from cubeslides import trees as tr
from cubeslides.errors import DependentSlides
from cubeslides.hypercube import CubeEdge as E

from conftest import WITNESSES


@pytest.fixture(scope="module")
def fixtures():
    return {w.extra.get("label", w.kind): w for w in srch.load_fixtures(WITNESSES)}


def test_fixtures_validate(fixtures):
    assert set(fixtures) == {"excess", "excess-five", "dependent", "dependent-k3"}
    for w in fixtures.values():
        srch.verify_witness(w)
        assert w.seed == 2012


def test_fixture_witnesses_reproduce(fixtures):
    for label, w in fixtures.items():
        params = {}
        if label == "excess-five":
            params = {"min_excess": 4, "k": 2}
        elif label == "dependent-k3":
            params = {"k": 3}
        again = srch.search(w.kind, w.n, budget=w.candidates, seed=w.seed, **params)
        assert again.to_record() == {k: v for k, v in w.to_record().items() if k != "label"}


def test_five_slidable_edges_lose_each_other(fixtures):
    w = fixtures["excess-five"]
    assert (w.n, w.k, len(w.slidable)) == (4, 2, 5)
    follow = srch.excess_followups(w)
    for row in follow:
        assert row["lost"] == [g for g in w.slidable if g != row["edge"]]
    assert any(len(row["slidable_after"]) == 3 for row in follow)


def test_dependent_pair_forms_cycle(fixtures):
    w = fixtures["dependent-k3"]
    assert (w.n, w.k, len(w.slidable), w.epsilon) == (5, 3, 2, (1, 1))
    for e in w.slidable:
        assert sl.is_slidable(w.tree, e, w.dir)
    with pytest.raises(DependentSlides) as info:
        sl.slide_class(w.tree, w.dir)
    assert info.value.epsilon == (1, 1)
    assert srch.check_cycle(w.n, sl.apply_epsilon(w.tree, w.slidable, w.dir, (1, 1)), info.value.cycle)


def test_tampered_witness_rejected(fixtures):
    w = copy.deepcopy(fixtures["dependent-k3"])
    w.cycle = w.cycle[:-2] + [w.cycle[0]]
    with pytest.raises(AssertionError):
        srch.verify_witness(w)
    w = copy.deepcopy(fixtures["excess"])
    w.slidable = w.slidable[:1]
    with pytest.raises(AssertionError):
        srch.verify_witness(w)


def test_check_cycle_rejects_bad_walks():
    es = {E(0, 1), E(0, 2), E(1, 2), E(2, 1)}
    assert srch.check_cycle(3, es, [0, 1, 3, 2, 0])
    assert not srch.check_cycle(3, es, [0, 1, 3, 2])
    assert not srch.check_cycle(3, es, [0, 1, 0, 1, 0])
    assert not srch.check_cycle(3, es - {E(2, 1)}, [0, 1, 3, 2, 0])


def test_search_is_deterministic_across_workers():
    a = srch.search_dependent_slides(5, budget=2000, seed=2012, k=3)
    b = srch.search_dependent_slides(5, budget=2000, seed=2012, k=3, workers=3)
    assert a.to_record() == b.to_record()


def test_search_not_found_and_guards():
    with pytest.raises(srch.WitnessNotFound) as info:
        srch.search(srch.EXCESS, 4, budget=5, min_excess=50)
    assert info.value.candidates == 5
    with pytest.raises(ValueError):
        srch.search(srch.EXCESS, 3)
    with pytest.raises(ValueError):
        srch.search("bogus", 4)


def test_q3_has_no_witnesses(all_q3):
    for t in all_q3:
        assert srch.examine(srch.EXCESS, t, {}) is None
        assert srch.examine(srch.DEPENDENT, t, {}) is None


def test_save_fixture_replaces_by_label(tmp_path, fixtures):
    path = tmp_path / "w.json"
    srch.save_fixture(path, fixtures["excess"])
    srch.save_fixture(path, fixtures["excess-five"], label="five")
    srch.save_fixture(path, fixtures["excess"])
    records = json.loads(path.read_text())
    assert [r.get("label", r["kind"]) for r in records] == ["five", "excess"]
    assert tr.from_record({"n": 4, "edges": records[1]["tree"]}) == fixtures["excess"].tree
