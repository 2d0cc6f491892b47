"""End-to-end checks of the python bindings against a known chain system."""

import math

import pytest

import interaction_model as im


def chain_matrix():
    # 0 -> 1 -> 2 with certain propagation and a single seed component
    return im.matrix_from_links(3, [(0, 1, 1.0), (1, 2, 1.0)], [1.0, 0.0, 0.0])


def test_simulate_and_quantify_roundtrip():
    cascades, discarded = im.simulate(chain_matrix(), count=200, seed=7)
    assert discarded == 0
    assert len(cascades) == 200
    for c in cascades.cascades:
        assert c.generations == [[0], [1], [2]]

    q = im.quantify(cascades)
    assert q.matrix.b_at(0, 1) == pytest.approx(1.0)
    assert q.matrix.b_at(1, 2) == pytest.approx(1.0)
    assert q.matrix.b_at(0, 2) == 0.0
    assert q.matrix.tau == pytest.approx([1.0, 0.0, 0.0])
    assert q.counts.m_used == 200
    assert im.estimate_lambda(cascades) == pytest.approx(2.0 / 3.0)


def test_noisy_recovery_within_tolerance():
    truth = im.ground_truth_matrix("tree", n=12, b_min=0.3, b_max=0.7, tau_min=0.05,
                                   tau_max=0.05, seed=11)
    cascades, _ = im.simulate(truth, count=60000, seed=3, streams=2)
    q = im.quantify(cascades)
    estimated = dict(((i, j), v) for i, j, v in q.matrix.b_items())
    for i, j, b_true in truth.b_items():
        assert estimated[(i, j)] == pytest.approx(b_true, abs=0.05)


def test_weighted_links_and_key_selection():
    cascades, _ = im.simulate(chain_matrix(), count=100, seed=1)
    q = im.quantify(cascades)
    weighted = im.weighted_links(q, mode="total")
    assert [(w.source, w.target) for w in weighted] == [(0, 1), (1, 2)]
    # each source fails 100 times and drags the rest of the chain along
    assert weighted[0].weight == pytest.approx(200.0)
    assert weighted[1].weight == pytest.approx(100.0)

    keys = im.key_links(weighted, epsilon=0.15)
    assert [(k.source, k.target) for k in keys] == [(0, 1), (1, 2)]

    out, inc = im.strengths(3, weighted)
    assert out == pytest.approx([200.0, 100.0, 0.0])
    assert inc == pytest.approx([0.0, 200.0, 100.0])
    assert im.key_components(out, epsilon=0.15) == [0, 1]


def test_similarity_of_identical_sets_is_one():
    cascades, _ = im.simulate(chain_matrix(), count=50, seed=5)
    q = im.quantify(cascades)
    weights = im.to_weight_map(im.weighted_links(q))
    report = im.similarity(weights, weights)
    for name in ("s1", "s2", "s3", "s4", "s5"):
        assert report[name] == pytest.approx(1.0)
    assert report["original_only_links"] == 0
    assert report["simulated_only_links"] == 0


def test_mitigation_weakens_propagation():
    truth = im.ground_truth_matrix("chain", n=4, b_min=0.8, b_max=0.8, tau_min=0.3,
                                   tau_max=0.3, seed=2)
    weakened = im.apply_mitigation(truth, [(0, 1), (1, 2), (2, 3)], weaken=1.0)
    assert weakened.b_items() == []
    cascades, _ = im.simulate(weakened, count=500, seed=9)
    assert im.estimate_lambda(cascades) == 0.0


def test_json_roundtrip_and_validation():
    cs = im.CascadeSet(3, [im.Cascade([[0], [2]]), im.Cascade([[1]])])
    text = im.cascades_to_json(cs)
    back = im.cascades_from_json(text)
    assert back.n_components == 3
    assert [c.generations for c in back.cascades] == [[[0], [2]], [[1]]]

    with pytest.raises(ValueError):
        im.CascadeSet(2, [im.Cascade([[5]])])  # id out of range
    with pytest.raises(ValueError):
        im.simulate(im.matrix_from_links(2, [], [0.0, 0.0]), count=10)  # nothing can fail


def test_outage_distribution_and_ccdf():
    cascades, _ = im.simulate(chain_matrix(), count=40, seed=4)
    dist = im.outage_distribution(cascades)
    assert dist == {3: 1.0}
    points = im.ccdf([1.0, 1.0, 2.0], population=4)
    assert points[0] == (0.0, 1.0)
    assert points[-1] == (2.0, 0.25)


def test_sample_size_helpers_run():
    cascades, _ = im.simulate(chain_matrix(), count=400, seed=6)
    sat = im.find_m_min(cascades, grid=[50, 100, 200, 300, 400], theta=0.01)
    assert sat["m_min"] == 50  # the chain saturates immediately
    probe = im.mismatch(cascades, m_u=100, epsilon=0.01)
    assert probe["satisfied"]
    assert probe["pc_original"] == pytest.approx(2.0)
    search = im.find_mu_min(cascades, epsilon=0.01, step_up=100, step_down=10, start=50)
    assert search["mu_min"] == 50
    assert search["stopped_at_floor"]


def test_deterministic_seeding():
    a, _ = im.simulate(chain_matrix(), count=30, seed=42)
    b, _ = im.simulate(chain_matrix(), count=30, seed=42)
    assert im.cascades_to_json(a) == im.cascades_to_json(b)
