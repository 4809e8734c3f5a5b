import math

import numpy as np
import pytest

import nehari


@pytest.fixture(scope="module")
def bounded():
    text = nehari.default_config()
    return text, nehari.Problem.from_config(text)


def test_default_validates():
    ok, report = nehari.validate(nehari.default_config())
    assert ok
    assert "(V2) pass" in report


def test_strong_coupling_rejected():
    text = nehari.default_config().replace('lambda = "0.3"', 'lambda = "1.2"')
    ok, report = nehari.validate(text)
    assert not ok
    assert "(V2) fail" in report
    with pytest.raises(nehari.ValidationError):
        nehari.Problem.from_config(text)


def test_projection_lands_on_manifold(bounded):
    _, p = bounded
    x = np.arange(1, p.shape[0] + 1) / (p.shape[0] + 1)
    u = np.sin(math.pi * x)
    t, pu, pv = nehari.fibering_project(p, u, u)
    assert t > 0
    assert abs(nehari.nehari_xi(p, pu, pv)) <= 1e-10 * nehari.norm(p, pu, pv) ** 2


def test_ground_state_and_symmetry(bounded):
    text, p = bounded
    g = nehari.ground_state(p, text)
    assert g["status"] == "converged"
    assert g["grad_residual"] <= 1e-8
    assert g["u"].shape == tuple(p.shape)
    assert nehari.orbit_distance(p, g["u"], g["v"], -g["u"], -g["v"]) == 0.0
    e = nehari.energy(p, g["u"], g["v"])
    assert math.isclose(e["total"], g["energy"], rel_tol=1e-12)


def test_eigenbasis_spectrum(bounded):
    _, p = bounded
    pairs = nehari.eigenbasis(p, 4)
    values = [v for v, _, _ in pairs]
    assert values == sorted(values)
    h = 1.0 / (p.shape[0] + 1)
    expected = 4.0 / h**2 * math.sin(math.pi * h / 2) ** 2 + 1.0
    assert math.isclose(values[0], expected, rel_tol=1e-10)


def test_run_fibering(tmp_path):
    code, out, err = nehari.run("fibering", nehari.default_config(), str(tmp_path), "smoke")
    assert code == 0, err
    assert "sign_changes = 1" in out
    assert (tmp_path / "smoke.fibering.csv").exists()
