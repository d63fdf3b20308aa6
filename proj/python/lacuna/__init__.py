"""Cyclotomic factors of sparse 0,1-polynomials 1 + x^{n_1} + ... + x^{n_k}.

Thin Python layer over the C++ core: exact rationals come back as
``fractions.Fraction`` and reports as plain dictionaries.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    InvalidParameters,
    LacunaError,
    ParseError,
    ResourceLimit,
    chernoff_binomial,
    conway_jones_split,
    cyclotomic_poly,
    divides_phi_dense,
    divides_phi_structural,
    enumerate_ball,
    eq3_lattice_bound,
    fs_candidates,
    find_cyclotomic_factors,
    reduce_mod_cyclic,
    sample_random,
    sweep_cap,
    volume_count_bound,
)

__all__ = [
    "InvalidParameters",
    "LacunaError",
    "ParseError",
    "ResourceLimit",
    "atom_probability",
    "build_basis",
    "chernoff_binomial",
    "conway_jones_split",
    "cyclotomic_poly",
    "decay_series",
    "divides_phi_dense",
    "divides_phi_structural",
    "enumerate_ball",
    "eq3_lattice_bound",
    "estimate",
    "exhaustive_enumeration",
    "find_cyclotomic_factors",
    "fs_candidates",
    "has_cyclotomic_factor",
    "multinomial_weight",
    "reduce_mod_cyclic",
    "sample_random",
    "small_n_exact",
    "sweep_cap",
    "total_bound",
    "volume_count_bound",
]


def _fraction(pair):
    return Fraction(pair[0], pair[1])


def atom_probability(c, k, n, N):
    return _fraction(_core.atom_probability(list(c), k, n, N))


def multinomial_weight(c, k, n):
    return _fraction(_core.multinomial_weight(list(c), k, n))


def has_cyclotomic_factor(exponents, N=0):
    return bool(find_cyclotomic_factors(list(exponents), N))


def build_basis(n):
    return json.loads(_core.build_basis_json(n))


def small_n_exact(k, n, convention="paper-c"):
    exact, asymptotic = _core.small_n_exact(k, n, convention)
    return (None if exact is None else _fraction(exact)), asymptotic


def total_bound(k):
    return json.loads(_core.total_bound_json(k))[0]


def _reports(text):
    reports = json.loads(text)
    for r in reports:
        if r.get("exact") is not None:
            r["exact"] = Fraction(r["exact"])
    return reports


def estimate(k, N, n=0, trials=10000, seed=1, mode="full-sweep", workers=0):
    return _reports(_core.estimate_json(k, N, n, trials, seed, mode, workers))[0]


def exhaustive_enumeration(k, N, n=0, mode="full-sweep"):
    return _reports(_core.exhaustive_json(k, N, n, mode))[0]


def decay_series(ks, N, trials=10000, seed=1, mode="fs-pruned", workers=0):
    return _reports(_core.decay_json(list(ks), N, trials, seed, mode, workers))
