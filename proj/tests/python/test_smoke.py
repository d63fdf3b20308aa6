from fractions import Fraction

import pytest

import lacuna


def test_sampling_is_deterministic():
    assert lacuna.sample_random(3, 3, seed=5) == [1, 2, 3]
    assert lacuna.sample_random(5, 100, 42, 0) == [9, 23, 29, 41, 48]
    assert lacuna.sample_random(5, 100, 42, 1) == lacuna.sample_random(5, 100, 42, 1)


def test_exact_probabilities():
    assert lacuna.reduce_mod_cyclic([1, 3, 4], 3) == [2, 2, 0]
    assert lacuna.atom_probability([2, 1, 1], 4, 3, 12) == Fraction(32, 165)
    assert lacuna.multinomial_weight([2, 2], 4, 2) == Fraction(3, 8)


def test_cyclotomic_detection():
    assert lacuna.cyclotomic_poly(10) == [1, -1, 1, -1, 1]
    assert -2 in lacuna.cyclotomic_poly(105)
    assert lacuna.find_cyclotomic_factors([5], 5) == [2, 10]
    assert lacuna.find_cyclotomic_factors([2, 4]) == [3, 6]
    assert not lacuna.has_cyclotomic_factor([1, 3])
    assert lacuna.divides_phi_structural([1, 2, 3], 4)
    parts, vanish = lacuna.conway_jones_split([1, 2, 3], 4, 2)
    assert parts == [[0, 2], [1, 3]] and all(vanish)
    assert lacuna.sweep_cap(2) == 6


def test_lattice():
    basis = lacuna.build_basis(4)
    assert basis["rank"] == 2
    assert basis["vectors"] == [[1, 0, 1, 0], [0, 1, 0, 1]]
    assert lacuna.enumerate_ball(5, 10.0) == 2 * int(10 / 5 ** 0.5) + 1
    assert lacuna.enumerate_ball(12, 5.0) <= lacuna.volume_count_bound(12, 5.0)


def test_bounds():
    assert lacuna.fs_candidates(4) == [1, 2, 3, 5, 6, 10]
    exact, _ = lacuna.small_n_exact(6, 3)
    assert exact == Fraction(90, 729)
    table = lacuna.total_bound(256)
    assert all(0 <= row["bound"] <= 1 for row in table["rows"])


def test_experiments():
    report = lacuna.exhaustive_enumeration(5, 12, n=2)
    assert report["exact"] == Fraction(25, 66)
    a = lacuna.estimate(6, 200, trials=500, seed=3, workers=1)
    b = lacuna.estimate(6, 200, trials=500, seed=3, workers=4)
    assert a == b
    assert len(lacuna.decay_series([3, 5], 100, trials=200)) == 2


def test_errors_map_to_exceptions():
    with pytest.raises(lacuna.InvalidParameters):
        lacuna.sample_random(4, 3, 1)
    with pytest.raises(lacuna.ResourceLimit):
        lacuna.exhaustive_enumeration(12, 80)
    with pytest.raises(lacuna.LacunaError):
        lacuna.cyclotomic_poly(0)
