import numpy as np
import pytest

import mvsumm


def synthetic(seed=0, sigma=0.01):
    return mvsumm.generate_synthetic(num_views=2, prototypes=3, copies=3, dim=16, noise_sigma=sigma, seed=seed)


def test_dataset_from_numpy():
    rng = np.random.default_rng(0)
    views = [rng.normal(size=(8, 3)), rng.normal(size=(8, 2))]
    shots = [mvsumm.ShotRecord(1, i + 1, 10 * i + 1, 10 * i + 10) for i in range(3)]
    shots += [mvsumm.ShotRecord(2, i + 1, 10 * i + 1, 10 * i + 10) for i in range(2)]
    ds = mvsumm.make_dataset(views, shots)
    assert ds.num_shots == 5
    assert ds.num_views == 2
    np.testing.assert_allclose(np.linalg.norm(ds.stacked(), axis=0), 1.0, atol=1e-12)


def test_bad_dataset_raises_data_error():
    shots = [mvsumm.ShotRecord(1, 1, 1, 10), mvsumm.ShotRecord(1, 2, 11, 20)]
    with pytest.raises(mvsumm.DataError):
        mvsumm.make_dataset([np.zeros((4, 2))], shots)


def test_pipeline_end_to_end():
    ds, gt, labels, _ = synthetic()
    analysis = mvsumm.analyze(ds)
    assert analysis.result.trace.converged
    augmented = [r.augmented for r in analysis.result.trace.records]
    assert all(b <= a + 1e-9 for a, b in zip(augmented, augmented[1:]))
    s3 = mvsumm.summarize(analysis, ds, 3)
    s5 = mvsumm.summarize(analysis, ds, 5)
    first = [e.flat_index for e in s3.entries]
    assert first == [e.flat_index for e in s5.entries][: len(first)]
    metrics = mvsumm.evaluate(s5, gt)
    assert 0.0 <= metrics.f_measure <= 1.0
    assert len(labels) == ds.num_shots


def test_solver_numpy_roundtrip():
    rng = np.random.default_rng(1)
    y = np.linalg.qr(rng.normal(size=(12, 3)))[0].T
    p = np.full(12, 0.5)
    z = mvsumm.z_step(y, p, 0.2)
    g = y.T @ y
    assert np.linalg.norm((g + 0.2 * np.diag(p)) @ z - g) <= 1e-8 * np.linalg.norm(g)
    assert mvsumm.update_P(np.zeros((2, 2)), 1e-8)[0] == pytest.approx(5000.0)


def test_f_measure_and_summary_json():
    assert mvsumm.f_measure(1.0, 0.5) == pytest.approx(2.0 / 3.0, abs=1e-12)
    ds, _, _, _ = synthetic(seed=3)
    a = mvsumm.analyze(ds, restarts=1, seed=4)
    b = mvsumm.analyze(ds, restarts=1, seed=4)
    assert mvsumm.summarize(a, ds, 4).to_json() == mvsumm.summarize(b, ds, 4).to_json()
    np.testing.assert_array_equal(np.asarray(a.curve), np.asarray(b.curve))
