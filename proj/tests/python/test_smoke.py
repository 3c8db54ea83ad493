import numpy as np
import pytest

import icvistream as icv


@pytest.fixture(scope="module")
def synthetic():
    x, y = icv.gen_synthetic(seed=3, total=700)
    return icv.order_stream(x, list(y), "random", seed=5)


def test_engine_clusters_the_synthetic_set(synthetic):
    x, y = synthetic
    model = icv.IcviTopoArtMap(icvi="iCH", rho_a=0.8, tau=5, xi=300, rho_MT_icvi=0.9)
    reports = model.fit(x)
    assert len(reports) == len(x)
    pred = model.predict(x)
    assert icv.ari(list(pred), list(y)) > 0.95
    assert model.n_clusters == 7


def test_determinism(synthetic):
    x, _ = synthetic
    a = icv.IcviTopoArtMap(icvi="iWB", rho_a=0.5, xi=200)
    b = icv.IcviTopoArtMap(icvi="iWB", rho_a=0.5, xi=200)
    a.fit(x)
    b.fit(x)
    assert a.state_digest() == b.state_digest()


def test_supervised_labels_take_priority():
    model = icv.IcviTopoArtMap(icvi="iCH", L_type="fixed")
    model.step([0.0, 0.0], label=4)
    model.step([9.0, 9.0], label=2)
    model.step([0.1, 0.1])
    assert model.n_clusters == 2


def test_step_report_fields():
    model = icv.IcviTopoArtMap(icvi="iCH")
    r = model.step([1.0, 2.0])
    assert r.t == 1
    assert r.k == 1
    assert r.p == 1
    assert r.icvi_value is None


def test_baselines_and_metrics(synthetic):
    x, y = synthetic
    skm = icv.SequentialKMeans(k=7)
    skm.fit(x)
    assert icv.ari(list(skm.predict(x)), list(y)) > 0.9

    dvfa = icv.WsDualVigilanceArt(rho_ub=0.9, rho_lb=0.85)
    dvfa.fit(x)
    assert dvfa.n_clusters >= 1

    topofa = icv.WsTopoFuzzyArt(rho=0.6)
    topofa.fit(x)
    assert topofa.n_clusters >= 1

    acc, n_mis = icv.accuracy([1, 2, 3], [1, 2, 0])
    assert n_mis == 1
    assert acc == pytest.approx(2.0 / 3.0)


def test_ari_relabel_invariance():
    assert icv.ari([0, 0, 1, 1], [5, 5, 3, 3]) == pytest.approx(1.0)


def test_bad_config_rejected():
    with pytest.raises(Exception):
        icv.IcviTopoArtMap(icvi="not_an_index")
    with pytest.raises(Exception):
        icv.IcviTopoArtMap(rho_a=-1.0)


def test_prediction_does_not_mutate(synthetic):
    x, _ = synthetic
    model = icv.IcviTopoArtMap(icvi="iCH", rho_a=0.5)
    model.fit(x[:200])
    digest = model.state_digest()
    model.predict(x)
    assert model.state_digest() == digest


def test_numpy_dtype_coercion():
    model = icv.IcviTopoArtMap(icvi="iCH")
    model.fit(np.array([[0, 0], [5, 5], [0, 1]], dtype=np.int64))
    assert model.samples_seen == 3
