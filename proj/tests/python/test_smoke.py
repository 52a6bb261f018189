import math

import numpy as np
import pytest

import qdeph


def test_case_models():
    m = qdeph.case_c3(3)
    assert m.n == 3
    assert m.physical
    assert m.C.shape == (3, 3)
    np.testing.assert_allclose(np.trace(m.C).real, 1.0, atol=1e-14)


def test_witness_case_studies():
    c3 = qdeph.case_c3(3)
    part = qdeph.Bipartition(3, [0])
    lam = qdeph.witness(c3, part)
    assert lam < -1e-3

    c1 = qdeph.case_c1(4)
    for p in qdeph.enumerate_bipartitions(4):
        assert qdeph.witness(c1, p) >= -1e-10

    best = qdeph.witness_all(c3)
    assert best.lambda_min == pytest.approx(lam)


def test_pseudo_det_law():
    for n in range(3, 7):
        tm = qdeph.pt_transform(qdeph.case_c3(n), qdeph.Bipartition(n, [0]))
        got = qdeph.pseudo_det(tm.C_tilde)
        assert got == pytest.approx((2 - n) / (4 * n * n), rel=1e-10)


def test_evolve_matches_numpy_oracle():
    m = qdeph.sample_ginibre(2, 11)
    rho = qdeph.evolve(qdeph.product_plus_state(2), m, 0.7)
    assert rho.rho.shape == (4, 4)
    np.testing.assert_allclose(np.trace(rho.rho), 1.0, atol=1e-12)
    np.testing.assert_allclose(rho.rho, rho.rho.conj().T, atol=1e-14)

    # coherence (0, 3): labels (+,+) vs (-,-), d = (2, 2)
    d = np.array([2.0, 2.0])
    gamma = 0.5 * d @ m.C.real @ d
    expected = 0.25 * math.exp(-gamma * 0.7)
    assert abs(rho.rho[0, 3]) == pytest.approx(expected, rel=1e-12)


def test_negativity_transient():
    m = qdeph.case_c3(3)
    grid = qdeph.geometric_grid(1e-3, 10.0, 40)
    trace = qdeph.negativity_trace(m, qdeph.product_plus_state(3),
                                   qdeph.Bipartition(3, [0]), grid)
    ens = [en for _, en in trace]
    assert ens[0] == 0.0
    assert max(ens) > 1e-3
    assert ens[-1] < 1e-3


def test_feedforward_identity():
    L = qdeph.z_sum_operator(np.array([1.0, -0.5j, 0.25 + 0.25j]))
    assert qdeph.feedforward_equiv(L) <= 1e-12


def test_classical_mc():
    m = qdeph.case_c1(2)
    res = qdeph.classical_mc(m, qdeph.product_plus_state(2), 0.3, 20000, 5)
    assert res.max_dev <= 0.05


def test_tomography_roundtrip():
    m = qdeph.sample_ginibre(3, 21)
    grid = qdeph.geometric_grid(0.01, 1.0, 40)
    report = qdeph.tomography_roundtrip(m, 0.0, grid, 1)
    assert report.err_re_c <= 1e-6
    assert report.err_im_c <= 1e-6
    assert report.rank == 6


def test_rank_deficient_two_qubits():
    m = qdeph.two_qubit_family(0.9, 0.7)
    with pytest.raises(qdeph.RankDeficientError):
        qdeph.recover(qdeph.predict_measurements(m))


def test_ensemble_scan():
    result = qdeph.fig2_scan(2000, seed=1)
    assert len(result.records) == 2000
    assert len(result.bins) == 50
    fractions = [b.fraction for b in result.bins]
    assert max(fractions) > 0.05


def test_model_io(tmp_path):
    m = qdeph.sample_ginibre(3, 9)
    path = str(tmp_path / "model.json")
    qdeph.write_model(m, path)
    back = qdeph.read_model(path)
    np.testing.assert_array_equal(back.C, m.C)
