"""Closed-form constants of the growth, distortion, disk and coefficient
inequalities for ``P_k``, ``R_k`` and ``V_k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidParameter


@dataclass(frozen=True)
class BoundSet:
    lower: float
    upper: float
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, **self.meta}


def _check(k: float, r: float) -> None:
    if not k >= 2:
        raise InvalidParameter(f"k must be >= 2, got {k!r}")
    if not 0 <= r < 1:
        raise InvalidParameter(f"r must satisfy 0 <= r < 1, got {r!r}")


def growth_bounds(k: float, r: float) -> BoundSet:
    """Bounds on ``|f(z)|``, ``|z| = r``, for ``f`` in ``R_k``."""
    _check(k, r)
    lower = r / ((1 - r) ** ((2 - k) / 2) * (1 + r) ** ((2 + k) / 2))
    upper = r / ((1 - r) ** ((2 + k) / 2) * (1 + r) ** ((2 - k) / 2))
    return BoundSet(lower, upper, {"k": k, "r": r, "name": "growth"})


def distortion_bounds(k: float, r: float) -> BoundSet:
    """Bounds on ``|f'(z)|``. A negative lower value is clamped to 0 and
    flagged with ``meta["clamped"]``."""
    _check(k, r)
    num_lo = 1 - k * r + r * r
    lower = num_lo / ((1 - r) ** (2 - k / 2) * (1 + r) ** (2 + k / 2))
    upper = (1 + k * r + r * r) / ((1 - r) ** (2 + k / 2) * (1 + r) ** (2 - k / 2))
    clamped = lower < 0
    meta = {"k": k, "r": r, "name": "distortion", "clamped": clamped}
    if clamped:
        meta["raw_lower"] = lower
    return BoundSet(max(lower, 0.0), upper, meta)


def re_bounds(k: float, r: float) -> BoundSet:
    """Bounds on ``Re(z f'/f)``; the lower value may be negative."""
    _check(k, r)
    d = 1 - r * r
    return BoundSet((1 - k * r + r * r) / d, (1 + k * r + r * r) / d,
                    {"k": k, "r": r, "name": "re"})


def pk_disk(k: float, r: float) -> tuple[float, float]:
    """Disk containing ``p(z)``, ``|z| = r``, for ``p`` in ``P_k``."""
    _check(k, r)
    d = 1 - r * r
    return (1 + r * r) / d, k * r / d


def robertson_disk(k: float, r: float) -> tuple[float, float]:
    """Disk containing ``z f''/f'`` for ``f`` in ``V_k``."""
    _check(k, r)
    d = 1 - r * r
    return 2 * r * r / d, k * r / d


def rising_product(k: float, n: int) -> float:
    """``prod_{v=0}^{n-2} (k + v)``."""
    out = 1.0
    for v in range(n - 1):
        out *= k + v
    return out


def coeff_bound(k: float, n: int, kind: str) -> float:
    """Upper bound on ``|p_n|`` (``Pk``) or ``|a_n|`` (``Rk``, ``Vk``)."""
    if not k >= 2:
        raise InvalidParameter(f"k must be >= 2, got {k!r}")
    kind = getattr(kind, "value", kind)
    if kind == "Pk":
        if n < 1:
            raise InvalidParameter("n must be >= 1 for Pk")
        return float(k)
    if n < 2:
        raise InvalidParameter(f"n must be >= 2 for {kind}")
    if kind not in ("Rk", "Vk"):
        raise InvalidParameter(f"unknown kind {kind!r}")
    denom = math.factorial(n - 1 if kind == "Rk" else n)
    if float(k).is_integer():
        # exact for integral k; the float product drifts past 2**53
        num = math.prod(range(int(k), int(k) + n - 1))
        return float(Fraction(num, denom))
    return rising_product(k, n) / denom


def radius_starlike(k: float) -> float:
    """Smaller root of ``1 - k r + r^2``, written to avoid cancellation."""
    if not k >= 2:
        raise InvalidParameter(f"k must be >= 2, got {k!r}")
    # (k - sqrt(k^2-4))/2 == 2/(k + sqrt(k^2-4))
    return 2.0 / (k + math.sqrt(k * k - 4))
