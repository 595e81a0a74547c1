import math

import numpy as np
import pytest

from boundrot.bounds import coeff_bound
from boundrot.caratheodory import caratheodory_from_schwarz, SchwarzFn
from boundrot.classes import (ClassFunction, Kind, Provenance, alexander, extremal_fn,
                              extremal_measure, extremal_pk, from_measure, pk_from_pair,
                              pk_from_measure, pk_from_rk, rk_from_pk, vk_from_pk,
                              vk_operator)
from boundrot.errors import InvalidParameter, NotCaratheodory
from boundrot.measures import DiscreteMeasure, herglotz_series, sample_measure
from boundrot.series import TruncSeries, div, evaluate

from conftest import cauchy_coeffs

N = 12
PLUS = div(TruncSeries([1, 1], order=N), TruncSeries([1, -1], order=N))   # (1+z)/(1-z)
MINUS = div(TruncSeries([1, -1], order=N), TruncSeries([1, 1], order=N))  # (1-z)/(1+z)


def test_pair_k2_collapses():
    p = pk_from_pair(MINUS, PLUS, 2)
    assert p.series.max_abs_diff(MINUS) == 0


def test_pair_k4_is_extremal():
    p = pk_from_pair(MINUS, PLUS, 4)
    assert p.series.max_abs_diff(extremal_pk(4, N).series) <= 1e-12
    # numerator 1 - 4z + z^2 over 1 - z^2
    expect = cauchy_coeffs(lambda z: (1 - 4 * z + z * z) / (1 - z * z), N)
    assert np.allclose(p.coeffs, expect, atol=1e-12)


def test_pair_swapped_order_gives_plus_sign():
    # positive weight on (1+z)/(1-z) yields (1 + kz + z^2)/(1 - z^2)
    p = pk_from_pair(PLUS, MINUS, 4)
    expect = cauchy_coeffs(lambda z: (1 + 4 * z + z * z) / (1 - z * z), N)
    assert np.allclose(p.coeffs, expect, atol=1e-12)


def test_pair_equal_inputs():
    assert pk_from_pair(PLUS, PLUS, 3).series.max_abs_diff(PLUS) <= 1e-15


def test_pair_errors():
    with pytest.raises(InvalidParameter):
        pk_from_pair(PLUS, PLUS, 1.9)
    with pytest.raises(NotCaratheodory):
        pk_from_pair(2 * PLUS, PLUS, 3)


def test_rk_from_koebe_p():
    f = rk_from_pk(PLUS, 5)
    assert np.allclose(f.coeffs, [0, 1, 2, 3, 4, 5])
    assert f.kind is Kind.Rk


def test_rk_from_constant():
    f = rk_from_pk(TruncSeries([1.0], order=6), 6)
    assert np.allclose(f.coeffs, [0, 1, 0, 0, 0, 0, 0])


def test_rk_from_extremal_k3():
    f = rk_from_pk(extremal_pk(3, 10), 4)
    assert np.allclose(f.coeffs[:4], [0, 1, -3, 5.5])


def test_pk_from_rk_koebe():
    koebe = TruncSeries(np.arange(N + 1.0))
    assert np.allclose(pk_from_rk(koebe).coeffs, PLUS.coeffs[:N])


def test_pk_from_rk_identity():
    assert np.allclose(pk_from_rk(TruncSeries([0, 1], order=5)).coeffs, [1, 0, 0, 0, 0])


def test_vk_from_koebe_p():
    f = vk_from_pk(PLUS, 6)
    assert np.allclose(f.coeffs, [0, 1, 1, 1, 1, 1, 1])
    assert f.kind is Kind.Vk


def test_vk_from_constant():
    assert np.allclose(vk_from_pk(TruncSeries([1.0], order=4), 4).coeffs, [0, 1, 0, 0, 0])


def test_vk_k2_coefficients_bounded():
    for seed in range(50):
        f = vk_from_pk(herglotz_series(sample_measure(2, 6, seed), 20), 20)
        assert np.max(np.abs(f.coeffs[1:])) <= 1 + 1e-12


def test_vk_operator_recovers_p():
    p = herglotz_series(sample_measure(4, 6, 3), 20)
    f = vk_from_pk(p, 21)
    assert vk_operator(f).max_abs_diff(p) <= 1e-10


def test_alexander_examples():
    f = ClassFunction(TruncSeries([0] + [1] * 8), 2, Kind.Vk)
    g = alexander(f, "forward")
    assert np.allclose(g.coeffs, np.arange(9))
    assert g.kind is Kind.Rk and g.k == 2
    back = alexander(g, "inverse")
    assert np.max(np.abs(back.coeffs - f.coeffs)) <= 1e-12
    ident = ClassFunction(TruncSeries([0, 1], order=4), 3, Kind.Vk)
    assert np.allclose(alexander(ident).coeffs, [0, 1, 0, 0, 0])


def test_from_measure_koebe():
    mu = DiscreteMeasure(((0.0, 2.0),))
    f = from_measure(mu, "Rk", 6)
    assert np.allclose(f.coeffs, np.arange(7))
    g = from_measure(mu, "Vk", 6)
    assert np.allclose(g.coeffs, [0, 1, 1, 1, 1, 1, 1])
    assert f.k == 2 and f.provenance.source == "measure"


def test_from_measure_uses_total_variation():
    mu = DiscreteMeasure(((math.pi, 3.0), (0.0, -1.0)))
    assert from_measure(mu, "Rk", 5).k == 4


def test_from_measure_closed_form_oracle():
    mu = sample_measure(5, 4, 11)
    u = np.exp(-1j * mu.angles)

    def f(z):
        z = np.asarray(z)[..., None]
        return z[..., 0] * np.prod((1 - z * u) ** (-mu.weights), axis=-1)

    expect = cauchy_coeffs(f, 15, rho=0.3, M=2048)
    assert np.allclose(from_measure(mu, "Rk", 15).coeffs, expect, atol=1e-9)


@pytest.mark.parametrize("k, expect", [
    (2, [0, 1, -2, 3, -4]),
    (3, [0, 1, -3, 5.5]),
    (4, [0, 1, -4, 9, -16]),
])
def test_extremal_fn_coefficients(k, expect):
    f = extremal_fn(k, 8)
    assert np.allclose(f.coeffs[: len(expect)], expect, atol=1e-12)


@pytest.mark.parametrize("k", [2, 2.5, 3, 4, 5, 6, 7.3])
def test_extremal_fn_cauchy_oracle(k):
    def fstar(z):
        return z * (1 - z) ** (k / 2 - 1) / (1 + z) ** (k / 2 + 1)

    assert np.allclose(extremal_fn(k, 20).coeffs, cauchy_coeffs(fstar, 20), atol=1e-9)


def test_extremal_pk_examples():
    assert np.allclose(extremal_pk(2, 5).coeffs[1:], 2 * (-1.0) ** np.arange(1, 6))
    assert np.allclose(extremal_pk(3, 4).coeffs[1:], [-3, 2, -3, 2])


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_extremal_identity(k):
    assert pk_from_rk(extremal_fn(k, 21)).max_abs_diff(extremal_pk(k, 20).series) <= 1e-10
    assert herglotz_series(extremal_measure(k), 20).max_abs_diff(extremal_pk(k, 20).series) <= 1e-12


def test_extremal_bad_k():
    with pytest.raises(InvalidParameter):
        extremal_fn(1, 5)
    with pytest.raises(InvalidParameter):
        extremal_pk(0, 5)


def test_class_function_invariants():
    with pytest.raises(NotCaratheodory):
        ClassFunction(TruncSeries([2, 1]), 2, Kind.Pk)
    with pytest.raises(InvalidParameter):
        ClassFunction(TruncSeries([0, 2]), 2, Kind.Rk)
    with pytest.raises(InvalidParameter):
        ClassFunction(TruncSeries([0, 1]), 1.5, Kind.Rk)


@pytest.mark.parametrize("make", [
    lambda: from_measure(sample_measure(4, 6, 1), "Rk", 8),
    lambda: pk_from_pair(MINUS, PLUS, 4),
    lambda: ClassFunction(caratheodory_from_schwarz(SchwarzFn(0.5, (0.2j,)), 6), 2, Kind.Pk,
                          Provenance("schwarz", SchwarzFn(0.5, (0.2j,)))),
    lambda: extremal_fn(3, 6),
])
def test_class_function_json_round_trip(make):
    f = make()
    back = ClassFunction.from_json(f.to_json())
    assert np.array_equal(back.coeffs, f.coeffs)
    assert back.kind is f.kind and back.k == f.k
    assert back.provenance.to_dict() == f.provenance.to_dict()
    assert set(f.to_dict()) == {"kind", "k", "coeffs", "provenance"}


# -- ensemble invariants ----------------------------------------------------

def _ensemble(n, order=30):
    for seed in range(n):
        k = 2 + (seed % 9) * 0.5
        mu = sample_measure(k, 6, seed)
        yield k, mu, pk_from_measure(mu, order)


def test_round_trip_pk_rk():
    for seed in range(200):
        k = 2 + 2 * (seed % 9) / 8
        p = pk_from_measure(sample_measure(k, 6, seed), 30)
        f = rk_from_pk(p, 31)
        assert pk_from_rk(f).max_abs_diff(p.series) <= 1e-10


def test_round_trip_pk_rk_large_k_relative():
    # a_n reaches ~4e3 at k = 6, n = 30; z f'/f cancels, so the error scales with max |a_n|
    for _, _, p in _ensemble(200):
        f = rk_from_pk(p, 31)
        scale = np.max(np.abs(f.coeffs))
        assert pk_from_rk(f).max_abs_diff(p.series) <= 1e-10 * scale


def test_alexander_commutation():
    for _, _, p in _ensemble(200):
        lhs = alexander(vk_from_pk(p, 30), "forward")
        assert lhs.series.max_abs_diff(rk_from_pk(p, 30).series) <= 1e-10


def test_measure_vs_recursion():
    for _, mu, p in _ensemble(200):
        assert from_measure(mu, "Rk", 30).series.max_abs_diff(rk_from_pk(p, 30).series) <= 1e-9


def _majorant(k, n_max):
    # (n-1) B_n = k sum_{v<n} B_v, B_1 = 1
    b = [0.0, 1.0]
    for n in range(2, n_max + 1):
        b.append(k * sum(b[1:n]) / (n - 1))
    return b


@pytest.mark.parametrize("k", [2, 2.5, 3, 4, 6])
def test_product_formula_matches_recursive_majorant(k):
    b = _majorant(k, 15)
    for n in range(2, 16):
        assert coeff_bound(k, n, "Rk") == pytest.approx(b[n], rel=1e-13)


def test_coefficient_bound_invariant():
    for k, _, p in _ensemble(300, 15):
        f = rk_from_pk(p, 15)
        for n in range(2, 16):
            assert abs(f.coeffs[n]) <= coeff_bound(k, n, "Rk") + 1e-9


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_extremal_second_coefficient(k):
    assert abs(abs(extremal_fn(k, 5).coeffs[2]) - k) <= 1e-10
