"""Closed-form scalar function families used as model primitives.

Every primitive of the contract model (outcome probabilities, effort cost,
success probability in the continuous-effort variant) is one of four
parametric families of a single variable, each with analytic first and
second derivatives:

    affine             f(v) = a + b*v                 coefficients (a, b)
    exponential-decay  f(v) = a*exp(-kappa*v)         coefficients (a, kappa)
    power              f(v) = a + b*v**gamma          coefficients (a, b, gamma)
    constant           f(v) = a                       coefficients (a,)

Closed-form derivatives keep differentiation error out of every downstream
slope comparison, so the only tolerances in the solvers are optimization
tolerances.  ``value``/``derivative``/``second_derivative`` accept floats or
numpy arrays and broadcast like ufuncs.

A power family with ``gamma < 1`` has an unbounded derivative at 0; it is
legal here (the continuous-effort model evaluates it only on an interval
bounded away from 0) and model validation rejects it when the domain
includes 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

AFFINE = "affine"
EXPONENTIAL_DECAY = "exponential-decay"
POWER = "power"
CONSTANT = "constant"

FAMILY_KINDS = (AFFINE, EXPONENTIAL_DECAY, POWER, CONSTANT)

_COEFF_COUNT = {AFFINE: 2, EXPONENTIAL_DECAY: 2, POWER: 3, CONSTANT: 1}


def _const_like(v, c: float):
    """Broadcast the constant ``c`` against a scalar or array argument."""
    if np.isscalar(v):
        return float(c)
    return np.full(np.shape(v), float(c))


@dataclass(frozen=True)
class ParametricFamily:
    """One closed-form scalar function; immutable and safe to share."""

    kind: str
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(
                f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}"
            )
        coeffs = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        expected = _COEFF_COUNT[self.kind]
        if len(coeffs) != expected:
            raise ValueError(
                f"{self.kind} family takes {expected} coefficients, got {len(coeffs)}"
            )
        if not all(np.isfinite(coeffs)):
            raise ValueError(f"family coefficients must be finite, got {coeffs}")
        if self.kind == EXPONENTIAL_DECAY:
            a, kappa = coeffs
            if a <= 0.0:
                raise ValueError(f"exponential-decay scale must be > 0, got {a}")
            if kappa < 0.0:
                raise ValueError(f"exponential-decay rate must be >= 0, got {kappa}")
        if self.kind == POWER and coeffs[2] <= 0.0:
            raise ValueError(f"power exponent must be > 0, got {coeffs[2]}")

    # -- convenience constructors -------------------------------------------------

    @classmethod
    def affine(cls, intercept: float, slope: float) -> "ParametricFamily":
        return cls(AFFINE, (intercept, slope))

    @classmethod
    def exponential_decay(cls, scale: float, rate: float) -> "ParametricFamily":
        return cls(EXPONENTIAL_DECAY, (scale, rate))

    @classmethod
    def power(cls, intercept: float, scale: float, exponent: float) -> "ParametricFamily":
        return cls(POWER, (intercept, scale, exponent))

    @classmethod
    def constant(cls, level: float) -> "ParametricFamily":
        return cls(CONSTANT, (level,))

    # -- evaluation ----------------------------------------------------------------

    def value(self, v):
        c = self.coefficients
        if self.kind == AFFINE:
            return c[0] + c[1] * v
        if self.kind == EXPONENTIAL_DECAY:
            return c[0] * np.exp(-c[1] * v)
        if self.kind == POWER:
            return c[0] + c[1] * np.power(v, c[2])
        return _const_like(v, c[0])

    def derivative(self, v):
        c = self.coefficients
        if self.kind == AFFINE:
            return _const_like(v, c[1])
        if self.kind == EXPONENTIAL_DECAY:
            return -c[1] * c[0] * np.exp(-c[1] * v)
        if self.kind == POWER:
            with np.errstate(divide="ignore"):
                return c[1] * c[2] * np.power(v, c[2] - 1.0)
        return _const_like(v, 0.0)

    def second_derivative(self, v):
        c = self.coefficients
        if self.kind == EXPONENTIAL_DECAY:
            return c[1] * c[1] * c[0] * np.exp(-c[1] * v)
        if self.kind == POWER:
            gamma = c[2]
            if gamma == 1.0:
                return _const_like(v, 0.0)
            with np.errstate(divide="ignore"):
                return c[1] * gamma * (gamma - 1.0) * np.power(v, gamma - 2.0)
        return _const_like(v, 0.0)

    def with_coefficient(self, index: int, value: float) -> "ParametricFamily":
        """Return a copy with one coefficient replaced (used by sweeps)."""
        if not 0 <= index < len(self.coefficients):
            raise ValueError(
                f"coefficient index {index} out of range for {self.kind} family"
            )
        coeffs = list(self.coefficients)
        coeffs[index] = float(value)
        return ParametricFamily(self.kind, tuple(coeffs))


def family_from_fields(kind: str, coefficients: Iterable[float]) -> ParametricFamily:
    """Build a family from loosely typed config fields."""
    return ParametricFamily(str(kind), tuple(float(c) for c in coefficients))
