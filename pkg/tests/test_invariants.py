from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from modexp.invariants import (
    cusp_form_upper,
    cusps_per_component,
    deg_cusp_sheaf_restricted,
    deg_dualizing_restricted,
    deg_omega_2k_restricted,
    deg_ss,
    edixhoven_bound,
    exponent_exact,
    exponent_upper,
    num_cusps,
    sl2_order,
    upper_bound_per_component,
    upper_bounds_via_matrix,
)
from modexp.xcurve import A, B, t_labels

F = Fraction


def sl2_bruteforce(M):
    return sum(1 for a, b, c, d in product(range(M), repeat=4) if (a * d - b * c) % M == 1)


@pytest.mark.parametrize("M", [2, 3, 4, 5, 6, 7, 8, 9])
def test_sl2_order_by_enumeration(M):
    assert sl2_order(M) == sl2_bruteforce(M)


def test_small_examples():
    assert (sl2_order(3), sl2_order(4), sl2_order(12)) == (24, 48, 1152)
    assert (num_cusps(3), num_cusps(4), num_cusps(5)) == (4, 6, 12)
    assert (deg_ss(3, 5), deg_ss(3, 2), deg_ss(4, 3)) == (4, 1, 4)
    assert (cusps_per_component(3, 5, 1), cusps_per_component(3, 2, 2), cusps_per_component(4, 3, 1)) == (16, 8, 12)
    assert deg_omega_2k_restricted(3, 5, 1, 1) == 40
    assert deg_cusp_sheaf_restricted(3, 5, 1, 1) == 24
    assert deg_omega_2k_restricted(3, 2, 2, 1) == 16


def test_dualizing_degree_values():
    assert deg_dualizing_restricted(3, 5, 1) == 24
    assert deg_dualizing_restricted(3, 2, 1) == 0
    assert deg_dualizing_restricted(4, 3, 1) == 12


def test_level_errors():
    with pytest.raises(ValueError):
        deg_ss(10, 5)
    with pytest.raises(ValueError):
        num_cusps(2)
    with pytest.raises(ValueError):
        sl2_order(1)
    with pytest.raises(ValueError):
        exponent_exact(4, 1, 3, 1)


def _grid():
    for N in (3, 4, 5, 7):
        for p, r in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]:
            if N % p:
                yield N, p, r


@pytest.mark.parametrize("N,p,r", list(_grid()))
def test_degree_consistency(N, p, r):
    assert deg_omega_2k_restricted(N, p, r, 1) == deg_dualizing_restricted(N, p, r) + cusps_per_component(N, p, r)
    assert cusps_per_component(N, p, r) * (p**r + p ** (r - 1)) == num_cusps(N * p**r)
    # the cusp-form sheaf loses exactly k times the cusps on a component
    for k in (1, 2, 3):
        assert deg_omega_2k_restricted(N, p, r, k) - deg_cusp_sheaf_restricted(N, p, r, k) == k * cusps_per_component(N, p, r)


def test_per_component_examples():
    assert upper_bound_per_component(5, 1, 1, A(1)) == 10
    # 2 p^(r-1)(pr - r + 1) = 2*3*5 at (3, 2)
    assert upper_bound_per_component(3, 2, 1, A(3)) == 30 - 12
    assert upper_bound_per_component(3, 2, 1, B(0)) == 30
    with pytest.raises(ValueError):
        upper_bound_per_component(3, 2, 1, A(0))


def test_exponent_upper_examples():
    assert (exponent_upper(5, 1, 1), exponent_upper(2, 2, 1), exponent_upper(7, 1, 3)) == (10, 12, 42)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(1, 4), st.integers(1, 6))
def test_exponent_linear_in_k(p, r, k):
    assert exponent_upper(p, r, k) == k * exponent_upper(p, r, 1)
    assert exponent_upper(p, r, k) == max(upper_bound_per_component(p, r, k, lab) for lab in t_labels(p, r))


def test_cusp_form_and_comparison_bounds():
    assert cusp_form_upper(3, 5, 1, 1) == 6
    assert edixhoven_bound(3, 5, 1) == 6
    assert cusp_form_upper(3, 2, 2, 1) == 6


@pytest.mark.parametrize("N,p", [(N, p) for N in (3, 4, 5, 7, 11) for p in (2, 3, 5, 7) if gcd(N, p) == 1])
def test_edixhoven_agrees_at_r1(N, p):
    assert cusp_form_upper(N, p, 1, 1) == edixhoven_bound(N, p, 1)
    for r in (2, 3):
        lead_cusp = 2 * p ** (r - 1) * (p * r - r + 1)
        assert F(2 * p ** (2 * r - 1), lead_cusp) == F(p**r, p * r - r + 1)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_matrix_route_bounds(p, r):
    N = next(n for n in (3, 4, 5, 7) if n % p)
    for k in (1, 2):
        for oracle in (True, False):
            bounds = upper_bounds_via_matrix(p, r, N, k, oracle=oracle)
            for lab, value in bounds.items():
                assert value == upper_bound_per_component(p, r, k, lab)
            assert max(bounds.values()) == exponent_upper(p, r, k)


def test_exponent_exact_reports():
    rep = exponent_exact(5, 1, 3, 1)
    assert (rep.upper, rep.lower, rep.exact) == (10, 10, 10)
    rep = exponent_exact(2, 2, 5, 1)
    assert rep.exact == 12
    rep = exponent_exact(3, 1, 4, 1)
    assert (rep.upper, rep.lower, rep.exact) == (6, None, None)
    assert "unavailable" in rep.note
    rep = exponent_exact(2, 2, 5, 2)
    assert rep.exact == 24
    data = rep.to_json()
    assert data["perComponent"]["A(2)"] == "16"
