import json
import math

import numpy as np
import pytest

import gme_maps as gm


def proj(v):
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def test_catalog_ids():
    assert gm.catalog_ids() == ["phi-t", "phi-tx", "eta", "phi-r", "phi-b", "mu-choi"]


def test_detect_noisy_ghz():
    m = gm.catalog_map("phi-tx", 3, 2)
    assert m.dims == [2, 2, 2]
    rho = gm.depolarized(proj(gm.ghz(3)), 0.8)
    v = gm.detect(m, rho)
    assert v["detected"]
    assert v["map"] == "phi-tx"
    assert not gm.detect(m, gm.depolarized(proj(gm.ghz(3)), 0.7))["detected"]


def test_w_state_min_eig():
    m = gm.phi_T(3)
    v = gm.detect(m, proj(gm.w_state(3)))
    assert v["min_eig"] == pytest.approx(1 - 2 / math.sqrt(3), abs=1e-10)


def test_thresholds():
    assert gm.noise_threshold(gm.catalog_map("eta", 3, 2), gm.ghz(3))["p_star"] == pytest.approx(3 / 7, abs=1e-6)
    mu = gm.catalog_map("mu-choi", 3, 3)
    assert gm.noise_threshold(mu, gm.ghz(3, 3))["p_star"] == pytest.approx(4 / 13, abs=1e-6)


def test_scan_and_ppt():
    mu = gm.catalog_map("mu-choi", 3, 3)
    rows = gm.lambda_scan(mu, [0.1, 0.34], threads=2)
    assert [r["detected"] for r in rows] == [True, False]
    rho = gm.ppt_family(1 / 9)
    assert gm.ppt_check(rho, [3, 3, 3])["ppt_all_cuts"]
    pt = gm.partial_transpose(rho, [3, 3, 3], [1])
    assert np.abs(pt - rho).max() < 1e-10


def test_mu_estimate():
    assert gm.estimate_mu("reduction", 4, samples=200, seed=7)["mu"] == pytest.approx(0.25, abs=1e-9)
    assert gm.estimate_mu("identity", 3, samples=50)["mu"] == pytest.approx(0.0, abs=1e-12)


def test_verify_and_witness():
    m = gm.catalog_map("phi-tx", 3, 2)
    rep = gm.verify_biseparable_positivity(m, samples=200, seed=3, threads=2)
    assert rep["ok"] and rep["violations"] == 0
    v = gm.detect(m, proj(gm.ghz(3)))
    w = gm.map_to_witness(m, np.array([complex(a, b) for a, b in v["eigvec"]]))
    assert np.trace(w @ proj(gm.ghz(3))).real == pytest.approx(v["min_eig"], abs=1e-9)
    back = gm.witness_to_map(w, [2, 2, 2])
    assert gm.detect(back, proj(gm.ghz(3)))["min_eig"] < 0


def test_map_json_roundtrip():
    m = gm.catalog_map("phi-r", 3, 3)
    doc = m.to_json()
    assert doc["format"] == "mapexpr-v1"
    back = gm.map_from_json(json.loads(json.dumps(doc)), [3, 3, 3])
    rho = gm.depolarized(proj(gm.ghz(3, 3)), 0.5)
    assert np.abs(back.apply(rho) - m.apply(rho)).max() < 1e-12


def test_errors():
    with pytest.raises(gm.GmeError):
        gm.catalog_map("mu-choi", 3, 2)
    with pytest.raises(ValueError):
        gm.catalog_map("phi-b", 3, 5)
    with pytest.raises(gm.GmeError):
        gm.detect(gm.catalog_map("phi-tx", 3, 2), np.eye(8))
