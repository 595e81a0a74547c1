"""Members of the classes P_k, R_k and V_k, and the maps between them.

The constructions used here:

* ``P_k`` from a pair of Carathéodory functions,
  ``p = (k/4 + 1/2) p1 - (k/4 - 1/2) p2``;
* ``R_k`` from ``p`` through ``z f'/f = p`` (coefficient recursion);
* ``V_k`` from ``R_k`` through the Alexander map ``f -> z f'``;
* ``R_k`` / ``V_k`` directly from a measure,
  ``f = z exp(-sum w_j log(1 - z e^{-i t_j}))`` (``f'`` for ``V_k``);
* the extremal function ``f*(z) = z (1-z)^{k/2-1} / (1+z)^{k/2+1}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from .caratheodory import SchwarzFn, caratheodory_from_schwarz
from .errors import InvalidParameter, NotCaratheodory
from .measures import DiscreteMeasure, herglotz_series, total_variation
from .series import TruncSeries, pow_real

NORM_TOL = 1e-10


class Kind(str, Enum):
    Pk = "Pk"
    Rk = "Rk"
    Vk = "Vk"


@dataclass(frozen=True)
class Provenance:
    """Where a class function came from.

    ``source`` is one of ``measure``, ``pair``, ``schwarz``, ``extremal``,
    ``explicit``; ``data`` holds the generating object(s).
    """

    source: str = "explicit"
    data: Any = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"type": self.source}
        if self.source == "measure":
            out.update(self.data.to_dict())
        elif self.source == "pair":
            out["p1"], out["p2"] = (s.to_pairs() for s in self.data)
        elif self.source == "schwarz":
            out.update(self.data.to_dict())
        elif self.data is not None:
            out["data"] = self.data
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Provenance":
        src = d.get("type", "explicit")
        if src == "measure":
            return cls(src, DiscreteMeasure.from_dict(d))
        if src == "pair":
            return cls(src, (TruncSeries.from_pairs(d["p1"]), TruncSeries.from_pairs(d["p2"])))
        if src == "schwarz":
            return cls(src, SchwarzFn.from_dict(d))
        return cls(src, d.get("data"))


@dataclass(frozen=True)
class ClassFunction:
    """A series claimed to lie in ``P_k``, ``R_k`` or ``V_k``.

    Membership is a claim backed by ``provenance``; it is not decided from
    the finitely many coefficients. Normalization is checked: ``p(0) = 1``
    for ``P_k``, ``f(0) = 0, f'(0) = 1`` otherwise.
    """

    series: TruncSeries
    k: float
    kind: Kind
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not self.k >= 2:
            raise InvalidParameter(f"k must be >= 2, got {self.k!r}")
        c = self.series.coeffs
        if self.kind is Kind.Pk:
            if abs(c[0] - 1) > NORM_TOL:
                raise NotCaratheodory(f"P_k member needs p(0) = 1, got {c[0]!r}")
        elif c.size < 2 or abs(c[0]) > NORM_TOL or abs(c[1] - 1) > NORM_TOL:
            raise InvalidParameter("R_k/V_k member needs f(z) = z + a_2 z^2 + ...")

    @property
    def coeffs(self) -> np.ndarray:
        return self.series.coeffs

    @property
    def order(self) -> int:
        return self.series.order

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "k": self.k,
            "coeffs": self.series.to_pairs(),
            "provenance": self.provenance.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClassFunction":
        return cls(TruncSeries.from_pairs(d["coeffs"]), float(d["k"]), Kind(d["kind"]),
                   Provenance.from_dict(d.get("provenance", {})))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ClassFunction":
        return cls.from_dict(json.loads(text))


def _check_k(k: float) -> None:
    if not k >= 2:
        raise InvalidParameter(f"k must be >= 2, got {k!r}")


def pk_from_pair(p1: TruncSeries, p2: TruncSeries, k: float) -> ClassFunction:
    _check_k(k)
    for name, p in (("p1", p1), ("p2", p2)):
        if abs(p[0] - 1) > NORM_TOL:
            raise NotCaratheodory(f"{name} has constant term {p[0]!r}, expected 1")
    p = (k / 4 + 0.5) * p1 - (k / 4 - 0.5) * p2
    return ClassFunction(p, k, Kind.Pk, Provenance("pair", (p1, p2)))


def pk_from_measure(mu: DiscreteMeasure, N: int, k: float | None = None) -> ClassFunction:
    k = total_variation(mu) if k is None else k
    return ClassFunction(herglotz_series(mu, N), max(k, 2.0), Kind.Pk, Provenance("measure", mu))


def pk_from_schwarz(phi: SchwarzFn, N: int) -> ClassFunction:
    return ClassFunction(caratheodory_from_schwarz(phi, N), 2.0, Kind.Pk,
                         Provenance("schwarz", phi))


def _as_pk(p) -> ClassFunction:
    if isinstance(p, ClassFunction):
        if p.kind is not Kind.Pk:
            raise InvalidParameter(f"expected a P_k function, got {p.kind.value}")
        return p
    return ClassFunction(p, 2.0, Kind.Pk)


def rk_coefficients(p: np.ndarray, N: int) -> np.ndarray:
    """``a_1 = 1``, ``a_n = 1/(n-1) sum_{v=1}^{n-1} p_{n-v} a_v`` for ``n <= N``.

    Returns ``a_0 .. a_N`` with ``a_0 = 0``; needs ``p_1 .. p_{N-1}``.
    """
    if len(p) < N:
        raise InvalidParameter(f"need p_1..p_{N - 1}, series has order {len(p) - 1}")
    a = np.zeros(N + 1, dtype=complex)
    a[1] = 1.0
    for n in range(2, N + 1):
        # p_{n-1} .. p_1 against a_1 .. a_{n-1}
        a[n] = np.dot(p[n - 1 : 0 : -1], a[1:n]) / (n - 1)
    return a


def rk_from_pk(p, N: int) -> ClassFunction:
    """Solve ``z f'/f = p`` for ``f = z + a_2 z^2 + ... + a_N z^N``."""
    p = _as_pk(p)
    a = rk_coefficients(p.coeffs, N)
    return ClassFunction(TruncSeries(a), p.k, Kind.Rk, p.provenance)


def pk_from_rk(f) -> TruncSeries:
    """``z f'(z) / f(z)``; the common factor ``z`` is cancelled first."""
    s = f.series if isinstance(f, ClassFunction) else f
    return s.zderiv().unshift() / s.unshift()


def alexander(f: ClassFunction, direction: str = "forward", N: int | None = None) -> ClassFunction:
    """``forward``: ``g = z f'`` (V_k -> R_k); ``inverse``: ``g_n = f_n / n``."""
    s = f.series if N is None else f.series.truncate(N)
    c = s.coeffs
    n = np.arange(c.size)
    if direction == "forward":
        g = c * n
        kind = Kind.Rk
    elif direction == "inverse":
        g = np.zeros_like(c)
        g[1:] = c[1:] / n[1:]
        kind = Kind.Vk
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return ClassFunction(TruncSeries(g), f.k, kind, f.provenance)


def vk_from_pk(p, N: int) -> ClassFunction:
    """``f`` with ``(z f')'/f' = p``, via ``R_k`` and the inverse Alexander map."""
    return alexander(rk_from_pk(p, N), "inverse")


def vk_operator(f) -> TruncSeries:
    """``(z f')' / f'``."""
    s = f.series if isinstance(f, ClassFunction) else f
    return s.zderiv().deriv() / s.deriv()


def from_measure(mu: DiscreteMeasure, kind: str, N: int) -> ClassFunction:
    """``R_k`` or ``V_k`` member generated by ``mu`` (``k`` = total variation).

    ``E = exp(-sum_j w_j log(1 - z e^{-i t_j}))``; ``R_k``: ``f = z E``;
    ``V_k``: ``f' = E``, integrated with ``f(0) = 0``.
    """
    kind = Kind(kind)
    if kind is Kind.Pk:
        return pk_from_measure(mu, N)
    log_sum = TruncSeries([0.0], order=N - 1)
    for t, w in mu.atoms:
        one_minus = TruncSeries([1.0, -np.exp(-1j * t)], order=N - 1)
        log_sum = log_sum - w * one_minus.log()
    E = log_sum.exp()
    f = E.shift() if kind is Kind.Rk else E.integ()
    return ClassFunction(f, max(total_variation(mu), 2.0), kind, Provenance("measure", mu))


def extremal_fn(k: float, N: int) -> ClassFunction:
    """``f*(z) = z (1 - z)^{k/2 - 1} (1 + z)^{-(k/2 + 1)}`` to order ``N``."""
    _check_k(k)
    one_minus = TruncSeries([1.0, -1.0], order=N - 1)
    one_plus = TruncSeries([1.0, 1.0], order=N - 1)
    body = pow_real(one_minus, k / 2 - 1) * pow_real(one_plus, -(k / 2 + 1))
    return ClassFunction(body.shift(), k, Kind.Rk, Provenance("extremal", {"k": k}))


def extremal_measure(k: float) -> DiscreteMeasure:
    """Atoms ``{(pi, k/2 + 1), (0, -(k/2 - 1))}``; a single atom when ``k = 2``."""
    _check_k(k)
    if k == 2:
        return DiscreteMeasure(((np.pi, 2.0),))
    return DiscreteMeasure(((np.pi, k / 2 + 1), (0.0, -(k / 2 - 1))))


def extremal_pk(k: float, N: int) -> ClassFunction:
    """``(1 - k z + z^2) / (1 - z^2)``: ``p_n = (k/2+1)(-1)^n - (k/2-1)``."""
    _check_k(k)
    n = np.arange(N + 1)
    c = (k / 2 + 1) * (-1.0) ** n - (k / 2 - 1)
    c[0] = 1.0
    return ClassFunction(TruncSeries(c), k, Kind.Pk, Provenance("extremal", {"k": k}))
