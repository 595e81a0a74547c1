"""Truncated complex power series.

A :class:`TruncSeries` holds the coefficients ``c_0 .. c_N`` of

    s(z) = c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))

and carries the truncation order ``N`` explicitly. Coefficients beyond ``N``
are unknown, not zero, so every binary operation truncates to the smaller
operand order::

    >>> a = TruncSeries([1, 1, 0, 0])          # 1 + z, order 3
    >>> (a * a).coeffs.real
    array([1., 2., 1., 0.])
    >>> (a / TruncSeries([1, -1, 0, 0])).coeffs.real   # (1+z)/(1-z)
    array([1., 2., 2., 2.])

Values are immutable; all operations return new series.
"""
from __future__ import annotations

import json
from numbers import Number
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DivisionBySmallConstant, NonzeroInnerConstant

EPS_DIV = 1e-12

__all__ = [
    "EPS_DIV",
    "TruncSeries",
    "arith",
    "div",
    "derive",
    "exp_log",
    "pow_real",
    "compose",
    "evaluate",
]


class TruncSeries:
    """Complex power series truncated at an explicit order.

    Parameters
    ----------
    coeffs : sequence of complex
        ``c_0 .. c_N``; the order is ``len(coeffs) - 1``.
    order : int, optional
        Pad with zeros (or cut) to this order. Padding here is an explicit
        statement that the extra coefficients are exactly zero, e.g. for a
        polynomial.
    """

    __slots__ = ("_c",)
    __array_ufunc__ = None  # numpy scalars defer to our operators

    def __init__(self, coeffs: Iterable[complex], order: int | None = None):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            if order + 1 > c.size:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
            else:
                c = c[: order + 1].copy()
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value: complex, order: int) -> "TruncSeries":
        return cls([value], order=order)

    @classmethod
    def identity(cls, order: int) -> "TruncSeries":
        """The series ``z``."""
        return cls([0, 1], order=order)

    @classmethod
    def geometric(cls, u: complex, order: int) -> "TruncSeries":
        """``1/(1 - u z)`` expanded to ``order``."""
        return cls(u ** np.arange(order + 1, dtype=float), order=order)

    # -- basic access -----------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, n):
        return self._c[n]

    def __repr__(self) -> str:
        return f"TruncSeries({np.array2string(self._c, precision=6)}, order={self.order})"

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncSeries(self._c[: order + 1])

    def allclose(self, other: "TruncSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.max(np.abs(self._c[:n] - other._c[:n])) <= atol)

    def max_abs_diff(self, other: "TruncSeries") -> float:
        n = min(self.order, other.order) + 1
        return float(np.max(np.abs(self._c[:n] - other._c[:n])))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, Number):
            return TruncSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return arith(self, other, "sub")

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return arith(other, self, "sub")

    def __neg__(self):
        return TruncSeries(-self._c)

    def __mul__(self, other):
        if isinstance(other, Number):
            return TruncSeries(self._c * other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return arith(self, other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return TruncSeries(self._c / other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return div(other, self)

    def __pow__(self, alpha):
        return pow_real(self, alpha)

    def __call__(self, z):
        return evaluate(self, z)

    # -- calculus ---------------------------------------------------------
    def deriv(self) -> "TruncSeries":
        return derive(self, "d_dz")

    def zderiv(self) -> "TruncSeries":
        return derive(self, "z_d_dz")

    def integ(self) -> "TruncSeries":
        """Termwise antiderivative vanishing at 0; order grows by one."""
        n = np.arange(1, self.order + 2)
        return TruncSeries(np.concatenate([[0.0], self._c / n]))

    def shift(self) -> "TruncSeries":
        """Multiply by ``z``; order grows by one."""
        return TruncSeries(np.concatenate([[0.0], self._c]))

    def unshift(self) -> "TruncSeries":
        """Divide by ``z``; the constant term must vanish."""
        if self._c[0] != 0:
            raise ValueError("unshift needs a zero constant term")
        if self.order == 0:
            raise ValueError("cannot unshift a series of order 0")
        return TruncSeries(self._c[1:])

    def exp(self) -> "TruncSeries":
        return exp_log(self, "exp")

    def log(self) -> "TruncSeries":
        return exp_log(self, "log")

    # -- serialization ----------------------------------------------------
    def to_pairs(self) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in self._c]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "TruncSeries":
        return cls([complex(re, im) for re, im in pairs])

    def to_json(self) -> str:
        return json.dumps(self.to_pairs())

    @classmethod
    def from_json(cls, text: str) -> "TruncSeries":
        return cls.from_pairs(json.loads(text))


def arith(a: TruncSeries, b: TruncSeries, op: str) -> TruncSeries:
    """Add, subtract or multiply two series, truncating at the smaller order."""
    n = min(a.order, b.order) + 1
    x, y = a.coeffs[:n], b.coeffs[:n]
    if op == "add":
        return TruncSeries(x + y)
    if op == "sub":
        return TruncSeries(x - y)
    if op == "mul":
        return TruncSeries(np.convolve(x, y)[:n])
    raise ValueError(f"unknown op {op!r}")


def _check_constant(c0: complex, eps: float, what: str) -> None:
    if abs(c0) <= eps:
        raise DivisionBySmallConstant(
            f"{what}: |constant term| = {abs(c0):.3g} <= eps_div = {eps:.3g}")


def div(a: TruncSeries, b: TruncSeries, eps_div: float = EPS_DIV) -> TruncSeries:
    """Quotient ``q`` with ``q * b = a`` to the smaller operand order."""
    _check_constant(b[0], eps_div, "div")
    n = min(a.order, b.order) + 1
    x, y = a.coeffs[:n], b.coeffs[:n]
    q = np.zeros(n, dtype=complex)
    inv = 1.0 / y[0]
    for k in range(n):
        # y[1..k] against q[k-1..0]
        acc = x[k] - np.dot(y[1 : k + 1], q[k - 1 :: -1]) if k else x[0]
        q[k] = acc * inv
    return TruncSeries(q)


def derive(s: TruncSeries, mode: str = "d_dz") -> TruncSeries:
    """``d/dz`` (order drops by one) or ``z d/dz`` (order kept)."""
    c = s.coeffs
    if mode == "d_dz":
        if s.order == 0:
            return TruncSeries([0.0])
        return TruncSeries(c[1:] * np.arange(1, c.size))
    if mode == "z_d_dz":
        return TruncSeries(c * np.arange(c.size))
    raise ValueError(f"unknown mode {mode!r}")


def exp_log(s: TruncSeries, mode: str, eps_div: float = EPS_DIV) -> TruncSeries:
    """Series exponential or principal-branch logarithm.

    Both use the recurrence from ``(exp s)' = s' exp s``: with ``e = exp s``,
    ``n e_n = sum_{j=1}^n j s_j e_{n-j}``. The log inverts it for ``s``.
    """
    c = s.coeffs
    n = c.size
    j = np.arange(n)
    if mode == "exp":
        e = np.zeros(n, dtype=complex)
        e[0] = np.exp(c[0])
        js = j * c
        for m in range(1, n):
            e[m] = np.dot(js[1 : m + 1], e[m - 1 :: -1][:m]) / m
        return TruncSeries(e)
    if mode == "log":
        _check_constant(c[0], eps_div, "log")
        out = np.zeros(n, dtype=complex)
        out[0] = np.log(c[0])
        jl = np.zeros(n, dtype=complex)  # j * out_j
        for m in range(1, n):
            acc = m * c[m] - np.dot(jl[1:m], c[m - 1 : 0 : -1])
            jl[m] = acc / c[0]
            out[m] = jl[m] / m
        return TruncSeries(out)
    raise ValueError(f"unknown mode {mode!r}")


def pow_real(s: TruncSeries, alpha: float, eps_div: float = EPS_DIV) -> TruncSeries:
    """``s**alpha`` as ``exp(alpha * log s)``, principal branch."""
    _check_constant(s[0], eps_div, "pow_real")
    if alpha == 0:
        return TruncSeries.constant(1.0, s.order)
    return exp_log(alpha * exp_log(s, "log", eps_div), "exp")


def compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """``outer(inner(z))`` by Horner's scheme; ``inner(0)`` must be exactly 0."""
    if inner[0] != 0:
        raise NonzeroInnerConstant(f"inner constant term is {inner[0]!r}, expected 0")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    c = outer.coeffs[: n + 1]
    acc = TruncSeries.constant(c[-1], n)
    for coeff in c[-2::-1]:
        acc = acc * inner + coeff
    return acc


def evaluate(s: TruncSeries, z):
    """Partial sum ``sum c_n z^n`` (Horner); ``z`` may be an array."""
    return P.polyval(z, s.coeffs)
