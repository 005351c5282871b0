"""Certified values and evaluation settings shared by every module."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

EPS = 2.0**-52
# absolute loss when a product or quotient underflows; relative terms cannot see it
_UNDERFLOW = 8 * 2.0**-1074


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


@dataclass(frozen=True)
class CertifiedValue:
    """A float with a rigorous absolute-error radius.

    The true quantity lies in ``[value - err, value + err]``. ``accurate`` is
    False when the producing operation could not reach its error target.

    Arithmetic propagates the radius to first order and charges one machine
    epsilon of the result per operation for rounding.
    """

    value: float
    err: float = 0.0
    accurate: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.value) and math.isfinite(self.err)) or self.err < 0:
            raise ValueError(f"invalid certified value {self.value!r} +- {self.err!r}")

    @property
    def lo(self):
        return self.value - self.err

    @property
    def hi(self):
        return self.value + self.err

    def contains(self, v, slack=0.0):
        return self.lo - slack <= v <= self.hi + slack

    @staticmethod
    def _lift(other):
        if isinstance(other, CertifiedValue):
            return other
        return CertifiedValue(float(other))

    def _make(self, value, err, other=None):
        ok = self.accurate and (other is None or other.accurate)
        # the error sum is itself rounded; inflate it slightly so it stays an upper bound
        return CertifiedValue(value, err * (1 + 4 * EPS) + EPS * abs(value) + _UNDERFLOW, ok)

    def __neg__(self):
        return CertifiedValue(-self.value, self.err, self.accurate)

    def __add__(self, other):
        o = self._lift(other)
        return self._make(self.value + o.value, self.err + o.err, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return self._make(self.value - o.value, self.err + o.err, o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return self._make(self.value * o.value, err, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.err >= abs(o.value):
            raise ZeroDivisionError("divisor interval contains zero")
        q = self.value / o.value
        # |a/b - A/B| <= (|a - A| + |q| |b - B|) / (|b| - err_b)
        err = (self.err + abs(q) * o.err) / (abs(o.value) - o.err)
        return self._make(q, err, o)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def square(self):
        return self * self

    def exp(self):
        if self.err >= 0.5:
            raise ValueError("exp propagation requires err < 0.5")
        v = math.exp(self.value)
        return self._make(v, v * (self.err + self.err**2) + EPS * v)

    def __float__(self):
        return self.value

    def __str__(self):
        return f"{self.value:.17g} +- {self.err:.3g}"


@dataclass(frozen=True)
class EvalConfig:
    """Truncation and shifting settings for certified evaluation."""

    target_err: float = 1e-12
    max_terms: int = 10**7
    shift_threshold: float = 40.0

    def __post_init__(self):
        if not self.target_err > 0:
            raise ValueError("target_err must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.shift_threshold > 0:
            raise ValueError("shift_threshold must be positive")

    @classmethod
    def from_env(cls, target_err=None, max_terms=None):
        """Explicit arguments, then ``GAMMASEQ_*`` environment variables, then defaults."""
        kw = {}
        if target_err is None and os.environ.get("GAMMASEQ_TARGET_ERR"):
            target_err = float(os.environ["GAMMASEQ_TARGET_ERR"])
        if max_terms is None and os.environ.get("GAMMASEQ_MAX_TERMS"):
            max_terms = int(os.environ["GAMMASEQ_MAX_TERMS"])
        if target_err is not None:
            kw["target_err"] = target_err
        if max_terms is not None:
            kw["max_terms"] = max_terms
        return cls(**kw)


DEFAULT_CONFIG = EvalConfig()


def check_positive(x, name="x"):
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x
