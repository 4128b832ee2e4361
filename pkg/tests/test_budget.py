import math

import numpy as np
import pytest

from covertlat import budget as B

LN2 = math.log(2.0)


def rho_pure0():
    return B.pure_state([1.0, 0.0])


def rho_pure1():
    return B.pure_state([0.0, 1.0])


# --- DensityMatrix validation -------------------------------------------------


def test_from_array_validates():
    with pytest.raises(ValueError):
        B.DensityMatrix.from_array([[0.5, 0.1], [0.2, 0.5]])  # not Hermitian
    with pytest.raises(ValueError):
        B.DensityMatrix.from_array([[0.7, 0.0], [0.0, 0.7]])  # trace != 1
    with pytest.raises(ValueError):
        B.DensityMatrix.from_array([[1.5, 0.0], [0.0, -0.5]])  # negative eigenvalue
    with pytest.raises(ValueError):
        B.DensityMatrix.from_array(np.eye(9) / 9)  # dimension too large
    with pytest.raises(ValueError):
        B.DensityMatrix.from_array(np.ones((2, 3)))


def test_json_round_trip():
    rng = np.random.default_rng(0)
    rho = B.random_density_matrix(3, rng)
    again = B.DensityMatrix.from_json_obj(rho.to_json_obj())
    assert np.allclose(again.to_array(), rho.to_array())


def test_random_density_matrix_is_valid():
    rng = np.random.default_rng(1)
    for d in (2, 3, 4, 8):
        rho = B.random_density_matrix(d, rng)
        assert rho.dim == d


# --- trace distance -------------------------------------------------------------


def test_trace_distance_identical():
    rho = B.maximally_mixed(2)
    assert B.trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_trace_distance_orthogonal_pure():
    assert B.trace_distance(rho_pure0(), rho_pure1()) == pytest.approx(1.0)


def test_trace_distance_mixed_vs_pure():
    # eigenvalues of diag(0.5, -0.5) give distance 0.5
    assert B.trace_distance(B.maximally_mixed(2), rho_pure0()) == pytest.approx(0.5)


def test_trace_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        B.trace_distance(B.maximally_mixed(2), B.maximally_mixed(3))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_trace_distance_is_a_metric_on_samples(d):
    rng = np.random.default_rng(d)
    for _ in range(200):
        a = B.random_density_matrix(d, rng)
        b = B.random_density_matrix(d, rng)
        c = B.random_density_matrix(d, rng)
        ab = B.trace_distance(a, b)
        ba = B.trace_distance(b, a)
        assert abs(ab - ba) < 1e-9
        assert 0.0 <= ab <= 1.0
        assert B.trace_distance(a, a) < 1e-9
        assert ab <= B.trace_distance(a, c) + B.trace_distance(c, b) + 1e-9


# --- relative entropy ------------------------------------------------------------


def test_qre_identical_states():
    rho = B.maximally_mixed(2)
    assert B.quantum_relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-9)


def test_qre_pure_vs_mixed_is_one_bit():
    assert B.quantum_relative_entropy(rho_pure0(), B.maximally_mixed(2)) == pytest.approx(1.0)


def test_qre_base_e():
    bits = B.quantum_relative_entropy(rho_pure0(), B.maximally_mixed(2))
    nats = B.quantum_relative_entropy(rho_pure0(), B.maximally_mixed(2), base=math.e)
    assert nats == pytest.approx(bits * LN2)


def test_qre_support_sentinel():
    assert B.quantum_relative_entropy(B.maximally_mixed(2), rho_pure0()) == math.inf


def test_qre_nonnegative_on_samples():
    rng = np.random.default_rng(7)
    for _ in range(100):
        a = B.random_density_matrix(3, rng)
        b = B.random_density_matrix(3, rng)
        assert B.quantum_relative_entropy(a, b) >= -1e-10


def test_qre_additive_for_products():
    rng = np.random.default_rng(11)
    for _ in range(50):
        a, b = (B.random_density_matrix(2, rng) for _ in range(2))
        c, d = (B.random_density_matrix(2, rng) for _ in range(2))
        joint = B.DensityMatrix.from_array(np.kron(a.to_array(), c.to_array()))
        joints = B.DensityMatrix.from_array(np.kron(b.to_array(), d.to_array()))
        left = B.quantum_relative_entropy(joint, joints)
        right = B.quantum_relative_entropy(a, b) + B.quantum_relative_entropy(c, d)
        assert left == pytest.approx(right, abs=1e-8)


# --- inequality checks -------------------------------------------------------------


def test_pinsker_identical_states():
    rho = B.maximally_mixed(2)
    rep = B.pinsker_check(rho, rho)
    assert rep.lhs == pytest.approx(0.0, abs=1e-9)
    assert rep.rhs == pytest.approx(0.0, abs=1e-9)
    assert rep.holds


@pytest.mark.parametrize("d", [2, 4])
def test_pinsker_on_random_pairs(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(100):
        rep = B.pinsker_check(
            B.random_density_matrix(d, rng), B.random_density_matrix(d, rng)
        )
        assert rep.holds and not rep.qre_infinite


def test_pinsker_infinite_qre_flagged():
    rep = B.pinsker_check(B.maximally_mixed(2), rho_pure0())
    assert rep.holds and rep.qre_infinite


def test_product_demo_reduces_to_pinsker_at_k1():
    rng = np.random.default_rng(5)
    rho, sigma = B.random_density_matrix(2, rng), B.random_density_matrix(2, rng)
    single = B.pinsker_check(rho, sigma)
    demo = B.product_pinsker_demo(rho, sigma, 1)
    assert demo.lhs == pytest.approx(single.lhs / 2)
    assert demo.rhs == pytest.approx(single.rhs / 2)


def test_product_demo_identical_states():
    rho = B.maximally_mixed(2)
    rep = B.product_pinsker_demo(rho, rho, 3)
    assert rep.lhs == pytest.approx(0.0, abs=1e-9) and rep.holds


def test_product_demo_monotone_in_k():
    rng = np.random.default_rng(21)
    for _ in range(20):
        rho, sigma = B.random_density_matrix(2, rng), B.random_density_matrix(2, rng)
        last = -1.0
        for k in (1, 2, 3, 4):
            rep = B.product_pinsker_demo(rho, sigma, k)
            assert rep.holds
            assert rep.lhs >= last - 1e-12
            last = rep.lhs


def test_product_demo_dimension_cap():
    rho = B.maximally_mixed(3)
    with pytest.raises(ValueError):
        B.product_pinsker_demo(rho, rho, 4)  # 81 > 64
    with pytest.raises(ValueError):
        B.product_pinsker_demo(rho, rho, 0)


# --- budget arithmetic ---------------------------------------------------------------


def test_k_shot_budget_values():
    cb = B.k_shot_budget(0.05, 100)
    assert cb.delta_qre == pytest.approx(0.02, rel=1e-15)
    assert cb.k_shot_bound == 0.5
    assert cb.missed_detection_exponent_scale == pytest.approx(2.0, rel=1e-15)


def test_k_shot_budget_zero_delta():
    cb = B.k_shot_budget(0.0, 5)
    assert cb.delta_qre == 0.0 and cb.k_shot_bound == 0.0


def test_k_shot_budget_validation():
    with pytest.raises(ValueError):
        B.k_shot_budget(-0.1, 1)
    with pytest.raises(ValueError):
        B.k_shot_budget(0.1, 0)


def test_budget_json():
    obj = B.k_shot_budget(0.1, 4).to_json_obj()
    assert obj["k_shot_bound"] == pytest.approx(0.2)
    assert set(obj) == {
        "delta", "k", "delta_qre", "k_shot_bound", "missed_detection_exponent_scale"
    }


def test_max_shots():
    assert B.max_shots(0.01, 0.1) == 100
    assert B.max_shots(0.05, 0.5) == 100
    assert B.max_shots(0.0, 0.3) is None
    with pytest.raises(ValueError):
        B.max_shots(-1.0, 0.1)


def test_max_shots_respects_bound():
    delta, target = 0.013, 0.2
    k = B.max_shots(delta, target)
    assert delta * math.sqrt(k) <= target
    assert delta * math.sqrt(k + 1) > target
