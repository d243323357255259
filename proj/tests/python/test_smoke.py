import math

import numpy as np
import pytest

import wicklab


def test_basis_order():
    assert wicklab.basis(2, 1) == [[0, 0], [1, 0], [0, 1]]


def test_transforms():
    assert wicklab.wick_transform("1*z^[1]*zbar^[1]") == "1*z^[1]*zbar^[1] + 1"
    assert wicklab.antiwick_transform("1*z^[1]*zbar^[1] + 1") == "1*z^[1]*zbar^[1]"
    assert wicklab.compose_antiwick("zbar^[1]", "z^[1]") == "1*z^[1]*zbar^[1]"
    assert wicklab.compose_antiwick("z^[1]", "zbar^[1]") == "1*z^[1]*zbar^[1] - 1"


def test_number_operator():
    m = wicklab.antiwick_quantize("z^[1]*zbar^[1]", 5)
    assert np.allclose(m, np.diag(np.arange(6) + 1.0), atol=0)


def test_translation_unitary():
    t = wicklab.translation([0.3 + 0.1j], 40)
    v = np.zeros(41, complex)
    v[:10] = np.arange(1, 11)
    assert abs(np.linalg.norm(t @ v) - np.linalg.norm(v)) < 1e-8
    assert wicklab.group_law_defect([0.3], [0.2j], 40, 10) < 1e-6
    assert wicklab.group_law_defect([0.3], [0.2j], 40, 10, flip_sigma=True) > 1e-2


def test_radial_power():
    lam = wicklab.radial_power_spectrum(1, 2.0, 5)
    assert np.allclose(lam, [2.0 + k for k in range(6)], rtol=1e-10)


def test_zones():
    assert wicklab.zone_planner(10, 1e4)["disjoint"]
    assert not wicklab.zone_planner(100, 25)["disjoint"]


def test_experiment_variance():
    rep = wicklab.run_experiment("variance", {"lambda": [1, 2, 3]})
    assert math.isclose(rep["rows"][0]["measured"], 14.0, abs_tol=1e-8)
    assert rep["meta"]["all_pass"]


def test_errors():
    with pytest.raises(ValueError):
        wicklab.run_experiment("hs-bound", {"rho_max": 1})
    with pytest.raises(ArithmeticError):
        wicklab.translation([3.0], 10)
