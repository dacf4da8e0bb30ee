import numpy as np
import pytest

import sctrack


def test_box_metrics():
    a = sctrack.BoundingBox(0, 0, 10, 10)
    b = sctrack.BoundingBox(5, 0, 10, 10)
    assert sctrack.cle(a, a) == 0.0
    assert sctrack.cle(sctrack.BoundingBox(3, 4, 10, 10), a) == 5.0
    assert sctrack.overlap(a, b) == pytest.approx(1.0 / 3.0)
    assert tuple(b) == (5, 0, 10, 10)
    assert b.center == (10.0, 5.0)


def test_config_defaults_and_validation():
    c = sctrack.TrackerConfig()
    assert (c.alpha, c.delta, c.beta) == (4.0, 8.0, 22.0)
    assert c.lambda_ == pytest.approx(0.9)
    assert (c.m_features, c.k_selected) == (100, 20)
    c.alpha = 30.0
    with pytest.raises(sctrack.InvalidConfig, match="alpha < delta"):
        c.validate()


def test_synthetic_sequence():
    frames, truth = sctrack.generate_synthetic(frames=5, seed=3, width=160, height=120)
    assert len(frames) == 5 and len(truth) == 5
    assert frames[0].shape == (120, 160) and frames[0].dtype == np.uint8
    again, _ = sctrack.generate_synthetic(frames=5, seed=3, width=160, height=120)
    assert all((x == y).all() for x, y in zip(frames, again))


def test_tracker_follows_synthetic_target():
    frames, truth = sctrack.generate_synthetic(frames=15, seed=2)
    tracker = sctrack.Tracker(frames[0], truth[0])
    for frame, gt in zip(frames[1:], truth[1:]):
        box, diag = tracker.track(frame)
        assert sctrack.cle(box, gt) < 10.0
        assert diag["positives"] > 0 and diag["negatives"] > 0
        assert len(diag["occluded"]) == 4
    assert tracker.position == box
    assert len(tracker.selected) == 20


def test_one_pass_evaluation_is_deterministic():
    frames, truth = sctrack.generate_synthetic(frames=12, seed=5)
    boxes_a, summary = sctrack.run_ope(sctrack.TrackerConfig(), frames, truth)
    boxes_b, _ = sctrack.run_ope(sctrack.TrackerConfig(), frames, truth)
    assert boxes_a == boxes_b
    assert summary["frames"] == 12
    assert summary["success_rate"] >= 0.9
    assert summary["fps"] > 0.0
    assert summary["lost_at"] is None


def test_bad_frame_shape():
    frames, truth = sctrack.generate_synthetic(frames=1)
    with pytest.raises(sctrack.InvalidInput):
        sctrack.Tracker(np.zeros((2, 2, 3), dtype=np.uint8), truth[0])
