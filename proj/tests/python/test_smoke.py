import numpy as np
import pytest

import cxrprep


def random_plane(seed, shape=(32, 40)):
    return np.random.default_rng(seed).integers(0, 256, size=shape, dtype=np.uint8)


def test_techniques_listed():
    assert cxrprep.techniques() == ["original", "he", "clahe", "complement", "gamma", "bcet"]


def test_complement_involution():
    img = random_plane(1, (16, 16, 3))
    out = cxrprep.complement(img)
    assert out.shape == img.shape
    assert np.array_equal(out, 255 - img)
    assert np.array_equal(cxrprep.complement(out), img)


def test_hist_equalize_two_levels():
    img = np.array([[10, 10], [200, 200]], dtype=np.uint8)
    assert cxrprep.hist_equalize(img).tolist() == [[0, 0], [255, 255]]


def test_single_tile_clahe_matches_he():
    img = random_plane(2)
    assert np.array_equal(cxrprep.clahe(img, 1, 1, 1e6), cxrprep.hist_equalize(img))


def test_gamma_and_bcet():
    assert cxrprep.gamma_curve(64.0, 0.5) == pytest.approx(91.75689639386086, rel=1e-12)
    a, b, c = cxrprep.bcet_fit(0, 200, 100, 15000)
    assert a == pytest.approx(0.0035, rel=1e-12)
    assert b == pytest.approx(-575 / 7, rel=1e-12)
    out = cxrprep.enhance(random_plane(3), "bcet")
    assert out.min() == 0 and out.max() == 255


def test_histogram_and_stats():
    img = random_plane(4)
    counts = cxrprep.histogram(img)
    assert len(counts) == 256 and sum(counts) == img.size
    assert np.array_equal(np.bincount(img.ravel(), minlength=256), counts)
    stats = cxrprep.image_stats(img)
    assert stats["e"] == pytest.approx(img.mean(), rel=1e-12)


def test_preprocess_ops():
    img = random_plane(5, (20, 20))
    assert cxrprep.resize(img, 224, 224).shape == (224, 224)
    z = cxrprep.zscore(img)
    assert z.dtype == np.float64
    assert abs(z.mean()) < 1e-9 and abs(z.std() - 1) < 1e-9
    assert np.array_equal(cxrprep.rotate(img, 0.0), img)
    angles = cxrprep.augmentation_angles("covid/a.png", copies=3, seed=4)
    assert angles == cxrprep.augmentation_angles("covid/a.png", copies=3, seed=4)
    assert all(abs(t) <= 10 for t in angles)
    mask = np.zeros((20, 20), dtype=np.uint8)
    mask[5:15, 5:15] = 1
    masked = cxrprep.apply_mask(img, mask)
    assert np.array_equal(masked, img * mask)


def test_metrics():
    r = cxrprep.classification_report([[8, 1, 1], [0, 9, 1], [1, 0, 9]], ["covid", "normal", "pneumonia"])
    assert r["accuracy"] == pytest.approx(26 / 30)
    assert r["weighted"]["recall"] == pytest.approx(r["accuracy"], abs=1e-12)
    pred = np.array([[1, 1, 1, 1, 0, 0, 0, 0, 0, 0]], dtype=np.uint8)
    truth = np.array([[1, 1, 1, 0, 1, 0, 0, 0, 0, 0]], dtype=np.uint8)
    s = cxrprep.seg_overlap_scores(pred, truth)
    assert s["iou"] == pytest.approx(0.6) and s["dice"] == pytest.approx(0.75)
    assert cxrprep.fold_sizes(3616) == (2314, 578, 724)


def test_image_round_trip(tmp_path):
    img = random_plane(6, (12, 9, 3))
    path = tmp_path / "x.png"
    cxrprep.write_image(path, img)
    assert np.array_equal(cxrprep.read_image(path), img)


def test_errors_carry_codes():
    with pytest.raises(cxrprep.CxrError) as info:
        cxrprep.bcet(np.full((4, 4), 9, dtype=np.uint8))
    assert info.value.code == "degenerate_input"
    with pytest.raises(ValueError):
        cxrprep.enhance(random_plane(7), "sharpen")
