"""Schwarz functions as finite Blaschke-type products, and the map

    p = (1 + phi) / (1 - phi)

onto functions with positive real part.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NotCaratheodory
from .series import TruncSeries, evaluate

TOL_POS = 1e-9


@dataclass(frozen=True)
class SchwarzFn:
    """``phi(z) = c * z * prod_i (a_i - z) / (1 - conj(a_i) z)``."""

    leading: complex = 1.0
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "leading", complex(self.leading))
        object.__setattr__(self, "zeros", tuple(complex(a) for a in self.zeros))
        if abs(self.leading) > 1:
            raise InvalidParameter(f"|c| = {abs(self.leading)} exceeds 1")
        for a in self.zeros:
            if not abs(a) < 1:
                raise InvalidParameter(f"zero {a} is not inside the unit disk")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.leading * z
        for a in self.zeros:
            out = out * (a - z) / (1 - np.conj(a) * z)
        return out

    def to_dict(self) -> dict:
        c = self.leading
        return {"c": [c.real, c.imag], "zeros": [[a.real, a.imag] for a in self.zeros]}

    @classmethod
    def from_dict(cls, data: dict) -> "SchwarzFn":
        return cls(complex(*data["c"]), tuple(complex(*a) for a in data.get("zeros", [])))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SchwarzFn":
        return cls.from_dict(json.loads(text))


def random_schwarz(seed: int, max_zeros: int = 4, zero_radius: float = 0.95) -> SchwarzFn:
    """Random Schwarz function with ``|c| <= 1`` and up to ``max_zeros`` factors."""
    rng = np.random.default_rng(seed)
    c = np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    m = int(rng.integers(0, max_zeros + 1))
    radii = zero_radius * np.sqrt(rng.uniform(size=m))
    zeros = radii * np.exp(2j * np.pi * rng.uniform(size=m))
    return SchwarzFn(complex(c), tuple(zeros.tolist()))


def schwarz_series(phi: SchwarzFn, N: int) -> TruncSeries:
    """Power series of ``phi`` to order ``N``; each Möbius factor is expanded
    as ``(a - z) * sum (conj(a) z)^n`` and the factors multiplied."""
    acc = TruncSeries([0, phi.leading], order=N)
    for a in phi.zeros:
        factor = TruncSeries([a, -1], order=N) * TruncSeries.geometric(np.conj(a), N)
        acc = acc * factor
    return acc


def caratheodory_from_schwarz(phi: SchwarzFn, N: int) -> TruncSeries:
    w = schwarz_series(phi, N)
    return (1 + w) / (1 - w)


def is_caratheodory(p: TruncSeries, r_max: float = 0.9, grid: int = 256,
                    tol_pos: float = TOL_POS, n_radii: int = 8) -> bool:
    """Sampled test of ``Re p > 0`` on ``{|z| <= r_max}``.

    Checks ``Re p(r e^{i theta}) > -tol_pos`` on ``n_radii`` circles up to
    ``r_max`` with ``grid`` angles each.
    """
    if abs(p[0] - 1) > 1e-10:
        raise NotCaratheodory(f"constant term {p[0]!r} != 1")
    radii = np.linspace(r_max / n_radii, r_max, n_radii)
    theta = 2 * np.pi * np.arange(grid) / grid
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    return bool(np.min(evaluate(p, z).real) > -tol_pos)
