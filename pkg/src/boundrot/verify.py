"""Seeded numerical checks of the class inequalities.

Every ensemble check draws sample ``i`` from ``sample_measure(k, max_atoms,
seed + i)``, evaluates it on a polar grid and reduces the per-sample results
in index order (max of violations). Results are therefore identical for any
worker count.

A *violation* is signed: ``measured - upper`` or ``lower - measured``; a
negative value is slack. ``pass`` holds iff the largest violation is at most
the effective tolerance, which is the requested tolerance plus a truncation
budget estimated from the last few series coefficients.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from . import bounds as B
from .caratheodory import caratheodory_from_schwarz, random_schwarz
from .classes import (ClassFunction, Kind, alexander, extremal_fn, extremal_pk,
                      from_measure, pk_from_rk, rk_from_pk, vk_operator)
from .errors import DivisionBySmallConstant, InvalidParameter
from .measures import herglotz_series, sample_measure, total_variation
from .series import EPS_DIV, TruncSeries, evaluate

DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7)
GROWTH_RADII = (0.1, 0.2, 0.3, 0.4, 0.5)


@dataclass
class VerificationReport:
    check: str
    k: float
    params: dict
    n_samples: int
    seed: int
    max_violation: float
    sharpness_gap: float
    worst_case: Any
    passed: bool
    samples: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "k": self.k,
            "params": self.params,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "max_violation": self.max_violation,
            "sharpness_gap": self.sharpness_gap,
            "worst_case": self.worst_case,
            "pass": self.passed,
        }

    def write_csv(self, path) -> None:
        """Per-sample extrema, one row per sample."""
        if not self.samples:
            fields = ["index", "seed", "max_violation"]
        else:
            fields = list(self.samples[0].keys())
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            w.writerows(self.samples)

    def csv_rows(self) -> list[dict]:
        return list(self.samples)


# -- helpers --------------------------------------------------------------

def tail_estimate(s: TruncSeries, r: float, last: int = 4) -> float:
    """Geometric guess at ``|sum_{n>N} c_n z^n|`` for ``|z| = r``."""
    c = np.abs(s.coeffs[-last:])
    return float(c.max() * r ** (s.order + 1) / (1 - r))


def _circle(r: float, grid: int) -> np.ndarray:
    return r * np.exp(2j * np.pi * np.arange(grid) / grid)


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
    return [fn(x) for x in items]


def _finish(check, k, params, seed, results, tail, sharpness_gap, tol, witness_key="measure"):
    """Reduce per-sample dicts (index order) into a report."""
    worst = max(results, key=lambda d: d["max_violation"]) if results else None
    max_violation = worst["max_violation"] if worst else 0.0
    effective = tol + tail
    params = dict(params, tol=tol, tail_budget=tail, effective_tol=effective)
    witness = None
    if worst is not None:
        witness = {key: worst[key] for key in (witness_key, "where") if key in worst}
    samples = [{k_: v for k_, v in d.items() if k_ not in (witness_key, "where")}
               for d in results]
    return VerificationReport(check, k, params, len(results), seed, float(max_violation),
                              float(sharpness_gap), witness,
                              bool(max_violation <= effective), samples)


def _check_k(k: float) -> None:
    if not k >= 2:
        raise InvalidParameter(f"k must be >= 2, got {k!r}")


# -- Carathéodory / P_k disk -------------------------------------------

def _disk_sample(seed, *, k, radii, grid, order, max_atoms):
    mu = sample_measure(k, max_atoms, seed)
    p = herglotz_series(mu, order)
    worst, where, tail = -math.inf, None, 0.0
    for r in radii:
        z = _circle(r, grid)
        center, radius = B.pk_disk(k, r)
        v = np.abs(evaluate(p, z) - center) - radius
        i = int(np.argmax(v))
        if v[i] > worst:
            worst, where = float(v[i]), [float(z[i].real), float(z[i].imag)]
        tail = max(tail, tail_estimate(p, r))
    return {"index": None, "seed": seed, "max_violation": worst,
            "total_variation": total_variation(mu), "tail": tail,
            "measure": mu.to_dict(), "where": where}


def disk_contact(k: float, r: float, order: int = 120) -> float:
    """``radius - |p*(-r) - center|`` for the extremal ``p*`` (0 when sharp)."""
    center, radius = B.pk_disk(k, r)
    p = extremal_pk(k, order).series
    return float(radius - abs(evaluate(p, -r) - center))


def verify_disk(k: float, ensemble: int = 200, seed: int = 0,
                radii: Sequence[float] = DEFAULT_RADII, grid: int = 256,
                order: int = 120, tol: float = 1e-6, max_atoms: int = 6,
                workers: int = 1) -> VerificationReport:
    """``|p(z) - (1+r^2)/(1-r^2)| <= k r/(1-r^2)`` over sampled ``P_k``."""
    _check_k(k)
    fn = partial(_disk_sample, k=k, radii=tuple(radii), grid=grid, order=order,
                 max_atoms=max_atoms)
    results = _indexed(_map(fn, [seed + i for i in range(ensemble)], workers))
    tail = max((d["tail"] for d in results), default=0.0)
    gaps = [disk_contact(k, r, order) for r in radii]
    params = {"radii": list(radii), "grid": grid, "order": order, "max_atoms": max_atoms,
              "extremal_contact_gap": gaps}
    return _finish("disk", k, params, seed, results, tail, max(abs(g) for g in gaps), tol)


def _indexed(results: list) -> list:
    for i, d in enumerate(results):
        d["index"] = i
    return results


# -- growth and distortion ----------------------------------------------

def _growth_sample(seed, *, k, radii, grid, order, max_atoms):
    mu = sample_measure(k, max_atoms, seed)
    f = rk_from_pk(herglotz_series(mu, order), order).series
    df = f.deriv()
    worst, where, tail = -math.inf, None, 0.0
    for r in radii:
        z = _circle(r, grid)
        g = B.growth_bounds(k, r)
        d = B.distortion_bounds(k, r)
        af = np.abs(evaluate(f, z))
        adf = np.abs(evaluate(df, z))
        v = np.maximum.reduce([af - g.upper, g.lower - af, adf - d.upper, d.lower - adf])
        i = int(np.argmax(v))
        if v[i] > worst:
            worst, where = float(v[i]), [float(z[i].real), float(z[i].imag)]
        tail = max(tail, tail_estimate(f, r), tail_estimate(df, r))
    return {"index": None, "seed": seed, "max_violation": worst,
            "total_variation": total_variation(mu), "tail": tail,
            "measure": mu.to_dict(), "where": where}


def growth_contact(k: float, r: float, order: int = 120) -> tuple[float, float]:
    """Gaps ``upper - |f*(-r)|`` and ``upper - |f*'(-r)|``."""
    f = extremal_fn(k, order).series
    g = B.growth_bounds(k, r).upper - abs(evaluate(f, -r))
    d = B.distortion_bounds(k, r).upper - abs(evaluate(f.deriv(), -r))
    return float(g), float(d)


def verify_growth_distortion(k: float, ensemble: int = 100, seed: int = 0,
                             radii: Sequence[float] = GROWTH_RADII, grid: int = 256,
                             order: int = 60, tol: float = 1e-6, max_atoms: int = 6,
                             workers: int = 1) -> VerificationReport:
    """Growth and distortion envelopes for sampled ``R_k`` on ``|z| = r``."""
    _check_k(k)
    if max(radii) > 0.5:
        raise InvalidParameter("radii above 0.5 exceed the truncation budget")
    fn = partial(_growth_sample, k=k, radii=tuple(radii), grid=grid, order=order,
                 max_atoms=max_atoms)
    results = _indexed(_map(fn, [seed + i for i in range(ensemble)], workers))
    tail = max((d["tail"] for d in results), default=0.0)
    contact = [growth_contact(k, r, max(order, 120)) for r in radii]
    params = {"radii": list(radii), "grid": grid, "order": order, "max_atoms": max_atoms,
              "growth_upper_gap": [c[0] for c in contact],
              "distortion_upper_gap": [c[1] for c in contact]}
    gap = max(max(abs(c[0]), abs(c[1])) for c in contact)
    return _finish("growth", k, params, seed, results, tail, gap, tol)


# -- coefficients ---------------------------------------------------------

def _coeff_sample(seed, *, k, n_max, max_atoms):
    mu = sample_measure(k, max_atoms, seed)
    p = herglotz_series(mu, n_max)
    f = rk_from_pk(p, n_max)
    g = alexander(f, "inverse")
    n = np.arange(2, n_max + 1)
    pb = k
    rb = np.array([B.coeff_bound(k, m, "Rk") for m in n])
    vb = np.array([B.coeff_bound(k, m, "Vk") for m in n])
    ap, af, ag = np.abs(p.coeffs), np.abs(f.coeffs), np.abs(g.coeffs)
    worst = max(float(np.max(ap[1:] - pb)), float(np.max(af[2:] - rb)),
                float(np.max(ag[2:] - vb)))
    return {"index": None, "seed": seed, "max_violation": worst,
            "total_variation": total_variation(mu),
            "max_abs_p": ap.tolist(), "max_abs_a": af.tolist(), "max_abs_g": ag.tolist(),
            "measure": mu.to_dict()}


def coefficient_table(k: float, n_max: int) -> list[dict]:
    """Bound vs extremal coefficient for ``n = 2..n_max``."""
    f = extremal_fn(k, n_max)
    rows = []
    for n in range(2, n_max + 1):
        bound = B.coeff_bound(k, n, "Rk")
        value = float(abs(f.coeffs[n]))
        rows.append({"n": n, "bound": bound, "extremal": value, "gap": bound - value})
    return rows


def verify_coefficients(k: float, n_max: int = 15, ensemble: int = 500, seed: int = 0,
                        tol: float = 1e-9, max_atoms: int = 6,
                        workers: int = 1) -> VerificationReport:
    """``|p_n| <= k`` and the ``R_k`` / ``V_k`` coefficient bounds."""
    _check_k(k)
    if n_max < 2:
        raise InvalidParameter("n_max must be >= 2")
    fn = partial(_coeff_sample, k=k, n_max=n_max, max_atoms=max_atoms)
    raw = _indexed(_map(fn, [seed + i for i in range(ensemble)], workers))
    emp_p = np.max([d.pop("max_abs_p") for d in raw], axis=0) if raw else []
    emp_a = np.max([d.pop("max_abs_a") for d in raw], axis=0) if raw else []
    emp_g = np.max([d.pop("max_abs_g") for d in raw], axis=0) if raw else []
    table = coefficient_table(k, n_max)
    for row in table:
        n = row["n"]
        row["empirical_max"] = float(emp_a[n]) if len(emp_a) else None
        row["vk_bound"] = B.coeff_bound(k, n, "Vk")
        row["vk_empirical_max"] = float(emp_g[n]) if len(emp_g) else None
    unattained = [{"n": r["n"], "bound": r["bound"], "extremal": r["extremal"]}
                  for r in table if r["gap"] > 1e-9]
    params = {"n_max": n_max, "max_atoms": max_atoms,
              "p_empirical_max": [float(x) for x in emp_p[1:]] if len(emp_p) else [],
              "table": table, "unattained_bounds": unattained}
    a2_gap = abs(table[0]["gap"])
    return _finish("coeff", k, params, seed, raw, 0.0, a2_gap, tol)


# -- rotation integrals --------------------------------------------------

def _antiderivative(q: TruncSeries, r: float):
    """``G(theta) = int_0^theta Re q(r e^{i s}) ds``."""
    c = q.coeffs
    n = np.arange(1, c.size)
    b = c[1:] * r ** n / (1j * n)

    def G(theta):
        return float((c[0] * theta).real + np.sum(b * (np.exp(1j * n * theta) - 1)).real)
    return G


def real_part_integral(q: TruncSeries, r: float, M: int = 1024,
                       method: str = "split") -> float:
    """``int_0^{2pi} |Re q(r e^{i theta})| d theta``.

    ``trapezoid`` is the plain periodic rule on ``M`` nodes. ``split`` uses
    those nodes only to bracket sign changes of ``Re q``; roots are refined
    and each sign-constant arc is integrated exactly through the series
    antiderivative, which removes the O(h^2) kink error.
    """
    theta = 2 * np.pi * np.arange(M) / M
    g = evaluate(q, r * np.exp(1j * theta)).real
    if method == "trapezoid":
        return float(2 * np.pi / M * np.abs(g).sum())
    if method != "split":
        raise ValueError(f"unknown method {method!r}")
    G = _antiderivative(q, r)
    s = np.where(g >= 0, 1, -1)
    nxt = np.roll(s, -1)
    cells = np.nonzero(s * nxt < 0)[0]
    if cells.size == 0:
        return abs(G(2 * np.pi))

    def re_q(t):
        return float(evaluate(q, r * np.exp(1j * t)).real)

    roots = []
    h = 2 * np.pi / M
    for i in cells:
        a = theta[i]
        roots.append(brentq(re_q, a, a + h, xtol=1e-15, rtol=1e-15))
    roots.sort()
    total = 0.0
    for a, b in zip(roots, roots[1:] + [roots[0] + 2 * np.pi]):
        total += abs(G(b) - G(a))
    return float(total)


def rotation_integral(f: ClassFunction, r: float, M: int = 1024, kind: str = "radius",
                      method: str = "split", eps: float = EPS_DIV) -> float:
    """Radius rotation ``int |Re(z f'/f)|`` or boundary rotation
    ``int |Re((z f')'/f')|`` over ``|z| = r``; compare with ``k pi``."""
    if not 0 <= r < 1:
        raise InvalidParameter(f"r must satisfy 0 <= r < 1, got {r!r}")
    if M < 256 or M & (M - 1):
        raise InvalidParameter("M must be a power of two >= 256")
    z = _circle(r, M)
    if kind == "radius":
        q = pk_from_rk(f)
        denom = np.abs(evaluate(f.series.unshift(), z))
    elif kind == "boundary":
        if f.kind is not Kind.Vk:
            raise InvalidParameter("boundary rotation needs a V_k function")
        q = vk_operator(f)
        denom = np.abs(evaluate(f.series.deriv(), z))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if denom.min() <= eps:
        raise DivisionBySmallConstant(f"function nearly vanishes on |z| = {r}")
    return real_part_integral(q, r, M, method)


def _rotation_sample(seed, *, k, r, M, order, max_atoms, method):
    mu = sample_measure(k, max_atoms, seed)
    f = from_measure(mu, "Rk", order)
    v = from_measure(mu, "Vk", order)
    I_rad = rotation_integral(f, r, M, "radius", method)
    I_bnd = rotation_integral(v, r, M, "boundary", method)
    limit = k * math.pi
    return {"index": None, "seed": seed,
            "max_violation": max(I_rad, I_bnd) - limit,
            "total_variation": total_variation(mu),
            "radius_integral": I_rad, "boundary_integral": I_bnd,
            "measure": mu.to_dict()}


def verify_rotation(k: float, ensemble: int = 200, seed: int = 0, r: float = 0.5,
                    M: int = 1024, order: int = 120, tol: float = 1e-5,
                    max_atoms: int = 6, method: str = "split",
                    workers: int = 1) -> VerificationReport:
    """Radius and boundary rotation integrals of sampled members against ``k pi``."""
    _check_k(k)
    fn = partial(_rotation_sample, k=k, r=r, M=M, order=order, max_atoms=max_atoms,
                 method=method)
    results = _indexed(_map(fn, [seed + i for i in range(ensemble)], workers))
    I_star = rotation_integral(extremal_fn(k, order), r, M, "radius", method)
    params = {"r": r, "M": M, "order": order, "max_atoms": max_atoms, "method": method,
              "threshold": k * math.pi, "boundary_threshold_alt": 2 * k * math.pi,
              "extremal_radius_integral": I_star}
    return _finish("rotation", k, params, seed, results, 0.0, k * math.pi - I_star, tol)


def _mean_value_sample(seed, *, r, M, order, max_atoms, method):
    # even seeds: measure with V = 2, odd seeds: Schwarz construction
    if seed % 2 == 0:
        src = sample_measure(2.0, max_atoms, seed)
        p = herglotz_series(src, order)
        witness = src.to_dict()
    else:
        phi = random_schwarz(seed)
        p = caratheodory_from_schwarz(phi, order)
        witness = phi.to_dict()
    I = real_part_integral(p, r, M, method)
    return {"index": None, "seed": seed, "max_violation": abs(I - 2 * math.pi),
            "integral": I, "measure": witness}


def verify_mean_value(ensemble: int = 200, seed: int = 0, r: float = 0.5, M: int = 1024,
                      order: int = 120, tol: float = 1e-6, max_atoms: int = 6,
                      method: str = "trapezoid", workers: int = 1) -> VerificationReport:
    """For Carathéodory ``p`` the rotation integral is exactly ``2 pi``.

    Defaults to the plain trapezoid rule: with no sign change the split
    method returns ``2 pi Re p_0`` without doing any quadrature.
    """
    fn = partial(_mean_value_sample, r=r, M=M, order=order, max_atoms=max_atoms,
                 method=method)
    results = _indexed(_map(fn, [seed + i for i in range(ensemble)], workers))
    params = {"r": r, "M": M, "order": order, "method": method, "target": 2 * math.pi}
    return _finish("mean_value", 2.0, params, seed, results, 0.0, 0.0, tol)


# -- radius of starlikeness -----------------------------------------------

def _radius_sample(seed, *, k, r, grid, order, max_atoms):
    mu = sample_measure(k, max_atoms, seed)
    f = rk_from_pk(herglotz_series(mu, order), order)
    q = pk_from_rk(f)
    z = _circle(r, grid)
    re = evaluate(q, z).real
    i = int(np.argmin(re))
    return {"index": None, "seed": seed, "max_violation": float(-re[i]),
            "total_variation": total_variation(mu), "tail": tail_estimate(q, r),
            "measure": mu.to_dict(), "where": [float(z[i].real), float(z[i].imag)]}


def starlike_contact(k: float, order: int = 120) -> float:
    """``Re(z f*'/f*)`` at ``z = R``; zero when the radius is sharp."""
    R = B.radius_starlike(k)
    order = _order_for(R, order)
    q = pk_from_rk(extremal_fn(k, order))
    return float(evaluate(q, R).real)


def _order_for(r: float, order: int, target: float = 1e-18) -> int:
    if r <= 0:
        return order
    need = int(math.ceil(math.log(target) / math.log(r))) + 40
    return max(order, min(need, 4000))


def verify_radius_starlike(k: float, ensemble: int = 200, seed: int = 0,
                           margin: float = 0.01, grid: int = 256, order: int = 120,
                           tol: float = 1e-9, max_atoms: int = 6,
                           workers: int = 1) -> VerificationReport:
    """``Re(z f'/f) > 0`` just inside the radius of starlikeness."""
    _check_k(k)
    R = B.radius_starlike(k)
    if k == 2:
        params = {"radius": R, "vacuous": True, "tol": tol, "tail_budget": 0.0,
                  "effective_tol": tol}
        return VerificationReport("radius", k, params, 0, seed, 0.0, 0.0, None, 0.0 <= tol)
    r = R - margin
    if r <= 0:
        raise InvalidParameter(f"margin {margin} exceeds the radius {R}")
    order = _order_for(r, order)
    fn = partial(_radius_sample, k=k, r=r, grid=grid, order=order, max_atoms=max_atoms)
    results = _indexed(_map(fn, [seed + i for i in range(ensemble)], workers))
    tail = max((d["tail"] for d in results), default=0.0)
    contact = starlike_contact(k)
    params = {"radius": R, "r": r, "margin": margin, "grid": grid, "order": order,
              "max_atoms": max_atoms, "extremal_re_at_radius": contact}
    return _finish("radius", k, params, seed, results, tail, abs(contact), tol)


# -- sampled class predicates ---------------------------------------------

def _grid(r_max: float, grid: int, n_radii: int = 8) -> np.ndarray:
    radii = np.linspace(r_max / n_radii, r_max, n_radii)
    return radii[:, None] * np.exp(2j * np.pi * np.arange(grid) / grid)[None, :]


def is_starlike(f, r_max: float = 0.9, grid: int = 256, tol: float = 1e-9) -> bool:
    """Sampled ``Re(z f'/f) > 0`` on ``|z| <= r_max``."""
    q = pk_from_rk(f)
    return bool(np.min(evaluate(q, _grid(r_max, grid)).real) > -tol)


def is_convex(f, r_max: float = 0.9, grid: int = 256, tol: float = 1e-9) -> bool:
    """Sampled ``Re(1 + z f''/f') > 0`` on ``|z| <= r_max``."""
    q = vk_operator(f)
    return bool(np.min(evaluate(q, _grid(r_max, grid)).real) > -tol)


# -- suite ----------------------------------------------------------------

CHECKS = ("disk", "growth", "coeff", "radius", "rotation")


def run_check(name: str, k: float, samples: int | None = None, seed: int = 0,
              tol: float | None = None, workers: int = 1, **kw) -> VerificationReport:
    """Dispatch one named check with optional overrides."""
    extra = dict(kw)
    if samples is not None:
        extra["ensemble"] = samples
    if tol is not None:
        extra["tol"] = tol
    fns = {"disk": verify_disk, "growth": verify_growth_distortion,
           "coeff": verify_coefficients, "radius": verify_radius_starlike,
           "rotation": verify_rotation}
    if name == "mean_value":
        return verify_mean_value(seed=seed, workers=workers, **extra)
    try:
        fn = fns[name]
    except KeyError:
        raise InvalidParameter(f"unknown check {name!r}") from None
    return fn(k, seed=seed, workers=workers, **extra)


def run_suite(k_list: Sequence[float] = (2, 3, 4, 6), seed: int = 0,
              samples: int | None = None, workers: int = 1) -> list[VerificationReport]:
    reports = []
    for k in k_list:
        for name in CHECKS:
            reports.append(run_check(name, k, samples=samples, seed=seed, workers=workers))
    reports.append(run_check("mean_value", 2.0, samples=samples, seed=seed, workers=workers))
    return reports
