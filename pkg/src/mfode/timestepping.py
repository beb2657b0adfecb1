"""Fixed-step explicit time integration on a geometric level hierarchy.

Level ``j`` uses timestep ``h_j = h / r**(j-1)`` and ``N_j = N * r**(j-1)``
steps, so all levels share the horizon ``T = N h``.  Supported schemes are
the classical Runge-Kutta methods of orders 2..4 and the Adams-Bashforth
multistep methods of the same orders; Adams-Bashforth startup values come
from the Runge-Kutta scheme of matching order, which preserves the global
order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArithmeticDegenerateError, BadGridError, NonFiniteStateError
from .problems import ParameterizedODE

__all__ = [
    "Scheme",
    "LevelGrid",
    "Trajectory",
    "SCHEMES",
    "get_scheme",
    "integrate",
    "convergence_slope",
]


@dataclass(frozen=True)
class Scheme:
    """A fixed-step explicit integration scheme."""

    name: str
    order: int
    kind: str  # "multistage" (Runge-Kutta) or "multistep" (Adams-Bashforth)


SCHEMES = {
    "rk2": Scheme("rk2", 2, "multistage"),
    "rk3": Scheme("rk3", 3, "multistage"),
    "rk4": Scheme("rk4", 4, "multistage"),
    "ab2": Scheme("ab2", 2, "multistep"),
    "ab3": Scheme("ab3", 3, "multistep"),
    "ab4": Scheme("ab4", 4, "multistep"),
}

# Adams-Bashforth coefficients, newest derivative first.
_AB_COEFFS = {
    2: np.array([3.0, -1.0]) / 2.0,
    3: np.array([23.0, -16.0, 5.0]) / 12.0,
    4: np.array([55.0, -59.0, 37.0, -9.0]) / 24.0,
}


def get_scheme(name) -> Scheme:
    if isinstance(name, Scheme):
        return name
    try:
        return SCHEMES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}; available: {sorted(SCHEMES)}") from None


@dataclass(frozen=True)
class LevelGrid:
    """Uniform time grid for one fidelity level.

    ``base_h`` is the coarsest (level-1) step; level ``level`` uses step
    ``base_h / r**(level-1)`` over ``n_steps`` steps.
    """

    base_h: float
    r: int
    level: int
    n_steps: int

    def __post_init__(self):
        if self.base_h <= 0:
            raise ValueError("base_h must be positive")
        if self.r < 2 or int(self.r) != self.r:
            raise ValueError("refinement ratio r must be an integer >= 2")
        if self.level < 1:
            raise ValueError("level must be >= 1")
        ratio = self.r ** (self.level - 1)
        if self.n_steps < 1 or self.n_steps % ratio != 0:
            raise ValueError("n_steps must be a positive multiple of r**(level-1)")

    @classmethod
    def from_base(cls, horizon, n_base, r, level):
        """Grid for ``level`` given the level-1 step count over ``horizon``."""
        return cls(base_h=horizon / n_base, r=r, level=level, n_steps=n_base * r ** (level - 1))

    @property
    def h(self) -> float:
        """Timestep at this level."""
        return self.base_h / self.r ** (self.level - 1)

    @property
    def horizon(self) -> float:
        return self.n_steps * self.h

    @property
    def n_base(self) -> int:
        """Level-1 step count N."""
        return self.n_steps // self.r ** (self.level - 1)

    def times(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.h

    def sibling(self, level: int) -> "LevelGrid":
        """Grid of another level in the same hierarchy."""
        return LevelGrid.from_base(self.horizon, self.n_base, self.r, level)


@dataclass(frozen=True)
class Trajectory:
    """Discrete solution values on one level grid at one parameter."""

    grid: LevelGrid
    values: np.ndarray  # (state_dim, n_steps + 1)
    k: np.ndarray

    @property
    def state_dim(self):
        return self.values.shape[0]


def _rk_step(order, rhs, t, u, h, k):
    if order == 2:  # explicit midpoint
        k1 = rhs(t, u, k)
        k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1, k)
        return u + h * k2
    if order == 3:  # Kutta's third-order rule
        k1 = rhs(t, u, k)
        k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1, k)
        k3 = rhs(t + h, u - h * k1 + 2.0 * h * k2, k)
        return u + h * (k1 + 4.0 * k2 + k3) / 6.0
    if order == 4:  # classical four-stage rule
        k1 = rhs(t, u, k)
        k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1, k)
        k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2, k)
        k4 = rhs(t + h, u + h * k3, k)
        return u + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    raise ValueError(f"no Runge-Kutta tableau of order {order}")


def integrate(problem: ParameterizedODE, scheme, grid: LevelGrid, k) -> Trajectory:
    """Integrate ``problem`` at parameter ``k`` over ``grid``.

    Returns the full discrete solution (n_steps + 1 nodes including the
    initial condition).  Raises NonFiniteStateError if the state blows up
    (NaN/Inf), which for explicit schemes signals that the step is too
    large, and BadGridError when the grid is too short for the scheme's
    startup.
    """
    scheme = get_scheme(scheme)
    k = np.atleast_1d(np.asarray(k, dtype=float))
    p = scheme.order
    n = grid.n_steps
    if n < p:
        raise BadGridError(f"scheme {scheme.name} needs at least {p} steps, grid has {n}")

    h = grid.h
    rhs = problem.rhs
    u = np.empty((n + 1, problem.state_dim))
    u[0] = problem.initial(k)

    with np.errstate(over="ignore", invalid="ignore"):
        if scheme.kind == "multistage":
            for i in range(n):
                u[i + 1] = _rk_step(p, rhs, i * h, u[i], h, k)
        else:
            coeffs = _AB_COEFFS[p]
            hist = [rhs(0.0, u[0], k)]
            for i in range(p - 1):  # startup with same-order Runge-Kutta
                u[i + 1] = _rk_step(p, rhs, i * h, u[i], h, k)
                hist.insert(0, rhs((i + 1) * h, u[i + 1], k))
            for i in range(p - 1, n):
                u[i + 1] = u[i] + h * (coeffs @ np.asarray(hist))
                hist.pop()
                hist.insert(0, rhs((i + 1) * h, u[i + 1], k))

    if not np.all(np.isfinite(u)):
        raise NonFiniteStateError(
            f"non-finite state while integrating {problem.name} with {scheme.name} "
            f"at h={h:g} (step size too large?)"
        )
    return Trajectory(grid=grid, values=u.T.copy(), k=k)


def convergence_slope(problem, scheme, k, h_list, t_eval, reference=None):
    """Empirical order: least-squares slope of log(error) vs log(h).

    Integrates up to ``t_eval`` for each step size (every h must divide
    t_eval), measures the Euclidean error of the final state against
    ``problem.exact`` (or an explicit ``reference`` state vector), and
    fits the log-log slope.
    """
    scheme = get_scheme(scheme)
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if reference is None:
        if problem.exact is None:
            raise ValueError(f"problem {problem.name} has no exact solution; pass reference=")
        reference = problem.exact(t_eval, k)
    reference = np.asarray(reference, dtype=float)

    errors = []
    for h in h_list:
        n = round(t_eval / h)
        if abs(n * h - t_eval) > 1e-9 * t_eval:
            raise BadGridError(f"h={h:g} does not divide t_eval={t_eval:g}")
        grid = LevelGrid(base_h=h, r=2, level=1, n_steps=n)
        traj = integrate(problem, scheme, grid, k)
        err = float(np.linalg.norm(traj.values[:, -1] - reference))
        if err == 0.0:
            raise ArithmeticDegenerateError("zero error: cannot take logarithm")
        errors.append(err)

    slope, _ = np.polyfit(np.log(np.asarray(h_list, dtype=float)), np.log(errors), 1)
    return float(slope)
