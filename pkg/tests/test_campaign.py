import json

import pytest

from latticesum import campaign
from latticesum.campaign import (
    MODES,
    CampaignConfig,
    GapNotFound,
    enumerate_polygons,
    find_gap_example,
    generate_instance,
    replay_instance,
    run_campaign,
)
from latticesum.decomp import howard_check, sumset_check
from latticesum.geometry import convex_hull, segment


@pytest.mark.parametrize("mode", MODES)
def test_every_mode_runs_clean(mode):
    rep = run_campaign(CampaignConfig(seed=3, trials=40, bound=6, max_vertices=6, mode=mode))
    assert rep.passed, rep.failures
    assert rep.trials == 40
    assert rep.applicable + rep.skipped == 40


def test_report_is_deterministic_without_timing():
    cfg = CampaignConfig(seed=42, trials=60, bound=10, mode="theorem")
    a = run_campaign(cfg).dumps(include_timing=False)
    b = run_campaign(cfg).dumps(include_timing=False)
    assert a == b
    assert "duration_s" not in json.loads(a)
    assert "duration_s" in run_campaign(cfg).to_json()


def test_instances_depend_only_on_seed_and_trial():
    cfg = CampaignConfig(seed=5, trials=10, bound=8, mode="howard-equiv")
    assert generate_instance(cfg, 7) == generate_instance(cfg, 7)
    other = CampaignConfig(seed=5, trials=999, bound=8, mode="howard-equiv")
    assert generate_instance(other, 7) == generate_instance(cfg, 7)


@pytest.mark.parametrize("kwargs", [
    {"trials": 0}, {"bound": 0}, {"bound": 2 ** 20}, {"max_vertices": 2}, {"mode": "nope"}, {"seed": -1},
])
def test_config_validation(kwargs):
    base = {"seed": 1, "trials": 1}
    with pytest.raises(ValueError):
        CampaignConfig(**{**base, **kwargs})


def test_failures_are_dumped_and_replayable(tmp_path, monkeypatch):
    def always_fail(P, Q):
        return "fail", "forced", {"area": 1}

    monkeypatch.setitem(campaign.CHECKS, "theorem", always_fail)
    rep = run_campaign(CampaignConfig(seed=9, trials=3, bound=5), dump_dir=str(tmp_path))
    assert not rep.passed
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["repro_theorem_9_0.json", "repro_theorem_9_1.json", "repro_theorem_9_2.json"]
    data = json.loads((tmp_path / files[1]).read_text())
    assert data["trial"] == 1
    assert replay_instance(data) == ("fail", "forced", {"area": 1})
    monkeypatch.undo()
    status, _, _ = replay_instance(data)
    assert status in ("ok", "skip")


def test_crashing_check_becomes_a_failure(monkeypatch):
    def boom(P, Q):
        raise RuntimeError("kaput")

    monkeypatch.setitem(campaign.CHECKS, "pick", boom)
    rep = run_campaign(CampaignConfig(seed=1, trials=2, bound=4, mode="pick"))
    assert len(rep.failures) == 2
    assert "kaput" in rep.failures[0]["detail"]["error"]


def test_enumeration_is_sorted_and_translation_reduced():
    polys = enumerate_polygons(1)
    assert polys[0].vertices == ((0, 0),)
    counts = [len(P.vertices) for P in polys]
    assert max(counts) == 4
    assert len(polys) == len(set(polys))


def test_find_gap_example():
    ex = find_gap_example(2)
    assert ex.P == segment((0, 0), (0, 1))
    assert ex.Q == segment((0, 0), (2, 1))
    assert ex.gap == (1, 1)
    assert ex.consistent
    assert ex.to_json()["coarsens"] == {"Q_by_P": False, "P_by_Q": False}


def test_unit_box_already_has_the_two_diagonals():
    ex = find_gap_example(1)
    assert (ex.P, ex.Q, ex.gap) == (segment((0, 0), (1, 1)), segment((0, 1), (1, 0)), (1, 1))
    assert ex.consistent


def test_triangle_and_long_segment_are_in_the_search_space():
    T = convex_hull([(0, 0), (1, 0), (0, 1)])
    S = segment((0, 0), (2, 1))
    polys = enumerate_polygons(2)
    assert T in polys and S in polys
    assert sumset_check(T, S).gap_points == ((1, 1),)
    assert howard_check(T, S).gap_points == ((1, 1),)


def test_search_limits():
    with pytest.raises(GapNotFound):
        find_gap_example(1, max_vertices=1)
    with pytest.raises(ValueError):
        find_gap_example(0)
