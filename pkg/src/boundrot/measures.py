"""Discrete signed measures on the circle and their kernel transforms.

A measure is a finite set of atoms ``(t_j, w_j)`` with angles in ``[0, 2pi)``
and nonzero real weights normalized so that ``sum w_j = 2``. Its transform is

    p(z) = 1/2 * sum_j w_j (1 + z e^{-i t_j}) / (1 - z e^{-i t_j})
         = 1 + sum_{n>=1} (sum_j w_j e^{-i n t_j}) z^n,

so ``p(0) = 1`` and ``|p_n| <= sum |w_j|``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidMeasure, InvalidParameter
from .series import TruncSeries

TWO_PI = 2.0 * math.pi
MASS_TOL = 1e-10
ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteMeasure:
    """Atomic signed measure; ``atoms`` is a tuple of ``(angle, weight)``."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(t), float(w)) for t, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise InvalidMeasure("measure has no atoms")
        t = np.array([a[0] for a in atoms])
        w = np.array([a[1] for a in atoms])
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
            raise InvalidMeasure("non-finite atom")
        if np.any(t < 0) or np.any(t >= TWO_PI):
            raise InvalidMeasure("angles must lie in [0, 2pi)")
        if np.any(w == 0):
            raise InvalidMeasure("atom weights must be nonzero")
        if abs(w.sum() - 2.0) > MASS_TOL:
            raise InvalidMeasure(f"total mass {w.sum()!r} != 2")
        ts = np.sort(t)
        gaps = np.diff(np.concatenate([ts, [ts[0] + TWO_PI]]))
        if len(ts) > 1 and np.min(gaps) <= ANGLE_TOL:
            raise InvalidMeasure("atom angles must be pairwise distinct")

    @property
    def angles(self) -> np.ndarray:
        return np.array([a[0] for a in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([a[1] for a in self.atoms])

    def to_dict(self) -> dict:
        return {"atoms": [[t, w] for t, w in self.atoms]}

    @classmethod
    def from_dict(cls, data: dict) -> "DiscreteMeasure":
        try:
            atoms = data["atoms"]
        except (KeyError, TypeError) as exc:
            raise InvalidMeasure("measure JSON needs an 'atoms' list") from exc
        return cls(tuple((t, w) for t, w in atoms))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "DiscreteMeasure":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "DiscreteMeasure":
        return cls.from_json(Path(path).read_text())


def total_variation(mu: DiscreteMeasure) -> float:
    """``sum |w_j|``; the measure is admissible for ``k`` iff this is ``<= k``."""
    return float(np.abs(mu.weights).sum())


def moments(mu: DiscreteMeasure, N: int) -> np.ndarray:
    """``m_n = sum_j w_j e^{-i n t_j}`` for ``n = 0..N``."""
    n = np.arange(N + 1)[:, None]
    return (mu.weights[None, :] * np.exp(-1j * n * mu.angles[None, :])).sum(axis=1)


def herglotz_series(mu: DiscreteMeasure, N: int) -> TruncSeries:
    """Carathéodory-type series of ``mu`` to order ``N`` (halved kernel)."""
    w = mu.weights
    if abs(w.sum() - 2.0) > MASS_TOL:
        raise InvalidMeasure(f"total mass {w.sum()!r} != 2")
    m = moments(mu, N)
    m[0] = 1.0
    return TruncSeries(m)


def kernel_sum(mu: DiscreteMeasure, z):
    """Direct evaluation of the halved kernel sum; independent of the series."""
    z = np.asarray(z, dtype=complex)
    u = np.exp(-1j * mu.angles)
    zu = z[..., None] * u
    return 0.5 * np.sum(mu.weights * (1 + zu) / (1 - zu), axis=-1)


@dataclass(frozen=True)
class JordanParts:
    lam_pos: float
    mu_pos: DiscreteMeasure
    lam_neg: float
    mu_neg: DiscreteMeasure

    def __iter__(self):
        return iter((self.lam_pos, self.mu_pos, self.lam_neg, self.mu_neg))


def jordan_decompose(mu: DiscreteMeasure) -> JordanParts:
    """Split ``mu`` into ``lam_pos * mu_pos - lam_neg * mu_neg``.

    Each part is renormalized to mass 2, so both transforms are
    Carathéodory functions and ``lam_pos - lam_neg = 1``. When the total
    variation equals ``k`` this gives the coefficients ``k/4 +- 1/2``.
    """
    w = mu.weights
    pos = [(t, x) for t, x in mu.atoms if x > 0]
    neg = [(t, -x) for t, x in mu.atoms if x < 0]
    if not pos:
        raise InvalidMeasure("measure has no positive atoms")
    A = sum(x for _, x in pos)
    B = sum(x for _, x in neg)
    if abs(A - B - 2.0) > MASS_TOL:
        raise InvalidMeasure(f"total mass {w.sum()!r} != 2")
    mu_pos = _renormalized(pos, A)
    if neg:
        mu_neg = _renormalized(neg, B)
    else:
        mu_neg = DiscreteMeasure(((0.0, 2.0),))
    return JordanParts(A / 2, mu_pos, B / 2, mu_neg)


def _renormalized(atoms, mass) -> DiscreteMeasure:
    scaled = [(t, 2.0 * x / mass) for t, x in atoms]
    # absorb rounding so the mass-2 check is exact
    drift = 2.0 - sum(x for _, x in scaled)
    t0, x0 = scaled[0]
    scaled[0] = (t0, x0 + drift)
    return DiscreteMeasure(tuple(scaled))


def sample_measure(k: float, max_atoms: int = 6, seed: int = 0) -> DiscreteMeasure:
    """Draw a random measure with total variation in ``[2, k]``.

    The variation ``V`` is uniform on ``[2, k]``; a positive mass
    ``(V+2)/2`` and negative mass ``(V-2)/2`` are each spread over a random
    number of atoms (Dirichlet weights) at uniform angles.
    """
    if not k >= 2:
        raise InvalidParameter(f"k must be >= 2, got {k!r}")
    if max_atoms < 1:
        raise InvalidParameter("max_atoms must be >= 1")
    rng = np.random.default_rng(seed)
    V = 2.0 if k == 2 else rng.uniform(2.0, k)
    A = (V + 2) / 2
    B = (V - 2) / 2
    n_pos = int(rng.integers(1, max_atoms + 1))
    n_neg = int(rng.integers(1, max_atoms + 1)) if B > 0 else 0
    while True:
        angles = rng.uniform(0.0, TWO_PI, n_pos + n_neg)
        s = np.sort(angles)
        if n_pos + n_neg == 1 or np.min(np.diff(np.concatenate([s, [s[0] + TWO_PI]]))) > 1e-9:
            break
    w_pos = A * rng.dirichlet(np.ones(n_pos))
    w_neg = -B * rng.dirichlet(np.ones(n_neg)) if n_neg else np.empty(0)
    w = np.concatenate([w_pos, w_neg])
    # pin the mass to exactly 2 on the largest positive atom
    w[int(np.argmax(w))] += 2.0 - w.sum()
    return DiscreteMeasure(tuple(zip(angles.tolist(), w.tolist())))
