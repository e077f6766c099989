"""Forward sampling, MCAR masking and seed derivation."""

import math

import numpy as np
import pytest

from nalearn import (
    MISSING,
    BayesNet,
    Bernoulli,
    Cpt,
    Dag,
    KPerRecord,
    Variable,
    apply_mcar,
    derive_seed,
    forward_sample,
    joint_distribution,
    splitmix64,
    subset_observation_probability,
    two_node_net,
)

from util import random_dataset


def deterministic_chain():
    variables = [Variable("X1", 2), Variable("X2", 2)]
    cpt = Cpt([np.array([[0.5, 0.5]]), np.array([[1.0, 0.0], [0.0, 1.0]])])
    return BayesNet(variables, Dag([[], [0]]), cpt)


def test_forward_sample_empty():
    data = forward_sample(two_node_net(), 0, seed=1)
    assert data.num_records == 0
    assert data.num_variables == 2


def test_forward_sample_marginal():
    data = forward_sample(two_node_net(), 100_000, seed=42)
    frac = float(np.mean(data.values[:, 0] == 0))
    assert abs(frac - 0.4) <= 0.005


def test_forward_sample_deterministic_chain():
    data = forward_sample(deterministic_chain(), 500, seed=7)
    np.testing.assert_array_equal(data.values[:, 0], data.values[:, 1])


def test_forward_sample_reproducible():
    a = forward_sample(two_node_net(), 1000, seed=5)
    b = forward_sample(two_node_net(), 1000, seed=5)
    np.testing.assert_array_equal(a.values, b.values)
    c = forward_sample(two_node_net(), 1000, seed=6)
    assert not np.array_equal(a.values, c.values)


def test_forward_sample_joint_total_variation():
    net = two_node_net()
    data = forward_sample(net, 100_000, seed=19)
    joint = joint_distribution(net)
    codes = data.values[:, 0] * 2 + data.values[:, 1]
    empirical = np.bincount(codes, minlength=4) / data.num_records
    tv = 0.5 * np.abs(empirical - joint).sum()
    assert tv < 0.02


def test_apply_mcar_identity():
    data = forward_sample(two_node_net(), 200, seed=3)
    out = apply_mcar(data, Bernoulli((1.0, 1.0)), seed=4)
    np.testing.assert_array_equal(out.values, data.values)


def test_apply_mcar_never_alters_observed_values():
    data = forward_sample(two_node_net(), 500, seed=8)
    out = apply_mcar(data, Bernoulli((0.5, 0.5)), seed=9)
    observed = out.values != MISSING
    np.testing.assert_array_equal(out.values[observed], data.values[observed])


def test_apply_mcar_bernoulli_rate():
    data = forward_sample(two_node_net(), 100_000, seed=12)
    out = apply_mcar(data, Bernoulli((0.75, 1.0)), seed=13)
    frac = float(np.mean(out.values[:, 0] == MISSING))
    assert abs(frac - 0.25) <= 0.005
    assert not np.any(out.values[:, 1] == MISSING)


def test_apply_mcar_kper_exact_counts():
    variables = [Variable(f"X{i}", 2) for i in range(5)]
    rng = np.random.default_rng(1)
    data = random_dataset(variables, 400, rng)
    for k in (0, 2, 4):
        out = apply_mcar(data, KPerRecord(k), seed=99)
        per_record = (out.values == MISSING).sum(axis=1)
        assert np.all(per_record == k)


def test_apply_mcar_kper_one_observed_cell():
    variables = [Variable(f"X{i}", 2) for i in range(4)]
    rng = np.random.default_rng(2)
    data = random_dataset(variables, 100, rng)
    out = apply_mcar(data, KPerRecord(3), seed=5)
    assert np.all((out.values != MISSING).sum(axis=1) == 1)


def test_apply_mcar_composes():
    variables = [Variable(f"X{i}", 2) for i in range(3)]
    rng = np.random.default_rng(3)
    data = random_dataset(variables, 200, rng, missing_frac=0.2)
    before = data.values == MISSING
    out = apply_mcar(data, Bernoulli((0.8, 0.8, 0.8)), seed=21)
    assert np.all((out.values == MISSING)[before])


def test_subset_observation_probability_paper_values():
    assert math.isclose(subset_observation_probability(37, 1, 3), 34 / 37)
    assert abs(subset_observation_probability(37, 2, 3) - 0.8423) < 5e-4
    assert abs(subset_observation_probability(37, 4, 3) - 0.7022) < 5e-4


def test_subset_observation_probability_edges():
    assert subset_observation_probability(5, 0, 3) == 1.0
    assert subset_observation_probability(5, 2, 3) == pytest.approx(1 / math.comb(5, 3))
    assert subset_observation_probability(5, 3, 3) == 0.0


def test_splitmix64_known_vector():
    # reference output of the splitmix64 sequence seeded at 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_derive_seed_order_independent():
    base = 123456789
    seeds = [derive_seed(base, i) for i in range(10)]
    assert len(set(seeds)) == 10
    assert derive_seed(base, 3) == seeds[3]


def test_bernoulli_validates_probs():
    with pytest.raises(ValueError):
        Bernoulli((1.2, 0.5))
    with pytest.raises(ValueError):
        KPerRecord(-1)
