"""End-to-end smoke tests for the Python surface of the toolkit."""

import json
import math
import os

import pytest
from PIL import Image

import synthmot

FAST_CONFIG = json.dumps(
    {
        "frame_count": 12,
        "fish_count_range": [4, 6],
        "master_seed": 3,
    }
)


def test_version_string():
    assert synthmot.__version__ == "0.1.0"


def test_iou_exact_thirds():
    assert synthmot.iou((0, 0, 2, 2), (1, 0, 2, 2)) == pytest.approx(1.0 / 3.0, abs=0)


def test_turbidity_alpha_closed_form():
    assert synthmot.turbidity_alpha(0.0, 0.5) == 0.0
    assert synthmot.turbidity_alpha(2.0, 0.5) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-15)


def test_validate_config_rejects_unknown_key():
    with pytest.raises(ValueError):
        synthmot.validate_config('{"frames": 10}')


def test_generate_parse_evaluate_loop(tmp_path):
    names = synthmot.generate_dataset(
        str(tmp_path / "data"), config_json=FAST_CONFIG, variant="T", count=2
    )
    assert names == ["Synth-T-001", "Synth-T-002"]

    gt = tmp_path / "data" / "Synth-T-001" / "gt" / "gt.txt"
    rows = synthmot.parse_gt(str(gt))
    assert rows, "sequence produced no annotations"
    for frame, oid, left, top, w, h, conf, cls, vis in rows:
        assert frame >= 1 and oid >= 1
        assert w >= 1 and h >= 1
        assert (conf, cls, vis) == (1, 5, 1)
    first = gt.read_text().splitlines()[0]
    assert first == ",".join(str(v) for v in rows[0])

    # Perfect detections track back to perfect scores.
    results = tmp_path / "results.txt"
    synthmot.track_file(str(gt), str(results))
    per_seq, combined = synthmot.evaluate([(str(gt), str(results))])
    assert len(per_seq) == 1
    assert combined["hota"] == pytest.approx(1.0, abs=1e-12)
    assert combined["mota"] == 1.0
    assert combined["idf1"] == 1.0

    # Corruption must cost measurable accuracy.
    noisy = tmp_path / "noisy.txt"
    synthmot.track_file(
        str(gt), str(noisy), drop=0.3, jitter=2.0, fp_rate=2.0, seed=9
    )
    _, worse = synthmot.evaluate([(str(gt), str(noisy))])
    assert worse["mota"] < 1.0 and worse["hota"] < 1.0

    ocom, mcom, motcom = synthmot.score_file(str(gt))
    assert 0.0 <= ocom <= 1.0 and 0.0 <= mcom <= 1.0
    assert motcom == pytest.approx((ocom + mcom) / 2.0, abs=1e-15)


def test_generation_is_deterministic(tmp_path):
    synthmot.generate_dataset(str(tmp_path / "a"), config_json=FAST_CONFIG, variant="BD", count=1)
    synthmot.generate_dataset(str(tmp_path / "b"), config_json=FAST_CONFIG, variant="BD", count=1)
    gt_a = (tmp_path / "a" / "Synth-BD-001" / "gt" / "gt.txt").read_bytes()
    gt_b = (tmp_path / "b" / "Synth-BD-001" / "gt" / "gt.txt").read_bytes()
    assert gt_a == gt_b


def test_rendered_frames_are_valid_png(tmp_path):
    cfg = json.dumps(
        {
            "frame_count": 2,
            "image_width": 160,
            "image_height": 120,
            "fish_count_range": [4, 5],
        }
    )
    synthmot.generate_dataset(str(tmp_path), config_json=cfg, variant="BTD", count=1, render=True)
    seq = tmp_path / "Synth-BTD-001"
    frames = sorted(os.listdir(seq / "img1"))
    assert frames == ["000001.png", "000002.png"]
    with Image.open(seq / "img1" / "000001.png") as im:
        assert im.size == (160, 120)
        assert im.mode == "RGB"
    ini = (seq / "seqinfo.ini").read_text()
    assert "seqLength=2" in ini and "imWidth=160" in ini


def test_split_98_scores():
    scored = [(f"seq-{i:03d}", i / 100.0) for i in range(98)]
    train, test = synthmot.split(scored)
    assert len(train) == 78 and len(test) == 20
    assert "seq-097" in train and "seq-096" in test


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        synthmot.parse_gt(str(tmp_path / "nope.txt"))
