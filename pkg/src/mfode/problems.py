"""Parameterized ODE test problems.

A problem bundles the right-hand side ``f(t, u, k)``, the initial
condition ``u0(k)``, the box domain for the parameter ``k`` and, when one
exists, a closed-form solution used as the error reference.  Two systems
ship with the package: a weakly damped mass-spring oscillator (linear,
with closed form) and the Lotka-Volterra predator-prey equations
(nonlinear, reference computed on a fine grid).

Well-posedness and smoothness of the trajectories over the parameter box
are the caller's responsibility; nothing here enforces them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "ParamDomain",
    "ParameterizedODE",
    "damped_oscillator",
    "predator_prey",
    "get_problem",
    "PROBLEMS",
]


@dataclass(frozen=True)
class ParamDomain:
    """Axis-aligned box of admissible parameter vectors."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ValueError("lower and upper must be 1-d arrays of equal length")
        if not np.all(lower < upper):
            raise ValueError("domain requires lower < upper componentwise")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self):
        return self.lower.shape[0]

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` uniform parameter vectors, shape (size, d)."""
        return rng.uniform(self.lower, self.upper, size=(size, self.dim))

    def contains(self, k) -> bool:
        k = np.atleast_1d(np.asarray(k, dtype=float))
        return bool(np.all(k >= self.lower) and np.all(k <= self.upper))

    def grid(self, count: int) -> np.ndarray:
        """Equally spaced parameters including both endpoints (1-d domains)."""
        if self.dim != 1:
            raise ValueError("grid() only supports one-dimensional domains")
        return np.linspace(self.lower[0], self.upper[0], count)[:, None]


@dataclass(frozen=True)
class ParameterizedODE:
    """First-order system ``du/dt = f(t, u, k)`` on ``t in [0, horizon]``.

    ``rhs`` and ``initial`` return length-``state_dim`` vectors.  ``exact``,
    when present, accepts a scalar or 1-d array of times and returns the
    solution with shape ``(state_dim,) + t.shape``.
    """

    name: str
    state_dim: int
    param_dim: int
    horizon: float
    domain: ParamDomain
    rhs: Callable[[float, np.ndarray, np.ndarray], np.ndarray]
    initial: Callable[[np.ndarray], np.ndarray]
    exact: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = field(default=None)


def damped_oscillator() -> ParameterizedODE:
    """Unforced mass-spring-damper, rewritten as a first-order system.

    The scalar model is ``u'' + (0.1 + k/100) u' + k u = 0`` with
    ``u(0) = 1`` and ``u'(0) = 10``, stiffness ``k in [5, 25]``.  The state
    vector is ``(u, u')``.  The system is underdamped over the whole
    parameter box, so the closed-form solution
    ``exp(-z t) * (A cos(wd t) + B sin(wd t))`` is attached as ``exact``.
    """

    def rhs(t, u, k):
        damping = 0.1 + k[0] / 100.0
        return np.array([u[1], -damping * u[1] - k[0] * u[0]])

    def initial(k):
        return np.array([1.0, 10.0])

    def exact(t, k):
        t = np.asarray(t, dtype=float)
        damping = 0.1 + k[0] / 100.0
        z = damping / 2.0
        wd = np.sqrt(k[0] - z * z)
        a = 1.0
        b = (10.0 + z * a) / wd
        env = np.exp(-z * t)
        cos_, sin_ = np.cos(wd * t), np.sin(wd * t)
        pos = env * (a * cos_ + b * sin_)
        vel = env * (-z * (a * cos_ + b * sin_) + wd * (-a * sin_ + b * cos_))
        return np.stack([pos, vel])

    return ParameterizedODE(
        name="oscillator",
        state_dim=2,
        param_dim=1,
        horizon=4.0,
        domain=ParamDomain(np.array([5.0]), np.array([25.0])),
        rhs=rhs,
        initial=initial,
        exact=exact,
    )


def predator_prey() -> ParameterizedODE:
    """Lotka-Volterra predator-prey system with coupled rate constants.

    Populations ``(x, y)`` evolve as ``x' = a x - b x y`` and
    ``y' = c x y - d y`` with ``a = k + 0.5``, ``b = 3 k + 1``,
    ``c = k + 1``, ``d = k + 0.5`` for ``k in [0.5, 1.5]``, starting from
    ``(1, 1)``.  No closed form exists; error studies use a fine-grid
    reference solution instead (see :mod:`mfode.reference`).
    """

    def rhs(t, u, k):
        a = k[0] + 0.5
        b = 3.0 * k[0] + 1.0
        c = k[0] + 1.0
        d = k[0] + 0.5
        x, y = u[0], u[1]
        return np.array([a * x - b * x * y, c * x * y - d * y])

    def initial(k):
        return np.array([1.0, 1.0])

    return ParameterizedODE(
        name="predator-prey",
        state_dim=2,
        param_dim=1,
        horizon=4.0,
        domain=ParamDomain(np.array([0.5]), np.array([1.5])),
        rhs=rhs,
        initial=initial,
        exact=None,
    )


PROBLEMS = {
    "oscillator": damped_oscillator,
    "predator-prey": predator_prey,
}


def get_problem(name: str) -> ParameterizedODE:
    """Look up a problem by registry name."""
    try:
        factory = PROBLEMS[name]
    except KeyError:
        raise ValueError(
            f"unknown problem {name!r}; available: {sorted(PROBLEMS)}"
        ) from None
    return factory()
