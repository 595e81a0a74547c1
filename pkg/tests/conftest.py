import numpy as np
import pytest


def cauchy_coeffs(func, N, rho=0.5, M=1024):
    """Taylor coefficients c_0..c_N of an analytic ``func`` from samples on
    ``|z| = rho`` (discrete Cauchy integral). Independent of the series code."""
    theta = 2 * np.pi * np.arange(M) / M
    vals = func(rho * np.exp(1j * theta))
    c = np.fft.fft(vals) / M
    return c[: N + 1] / rho ** np.arange(N + 1)


def binom(alpha, n):
    """Generalized binomial coefficient C(alpha, n) by direct product."""
    out = 1.0
    for j in range(n):
        out *= (alpha - j) / (j + 1)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
