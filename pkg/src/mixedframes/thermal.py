"""Smeared time translations in the momentum basis and thermal states.

Sharp time translations multiply momentum eigenstates by a phase, so every
momentum-diagonal state is invariant under them. Smearing the translation
over energies with width 1/beta turns a sharp-momentum ensemble into a
Maxwell-Boltzmann distribution at temperature T = hbar / (k_B beta): the
thermal state appears as a consequence of the smearing alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridMismatchError, NormalizationError

GRID_NORM_TOL = 1e-9


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar and the Boltzmann constant; defaults are natural units."""

    hbar: float = 1.0
    k_boltzmann: float = 1.0

    def __post_init__(self) -> None:
        if not (self.hbar > 0.0 and math.isfinite(self.hbar)):
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not (self.k_boltzmann > 0.0 and math.isfinite(self.k_boltzmann)):
            raise ValueError(f"k_boltzmann must be positive, got {self.k_boltzmann}")


NATURAL_UNITS = PhysicalConstants()


@dataclass(frozen=True)
class ThermalParameters:
    """Smearing width beta (units of time), particle mass, unit constants."""

    beta: float
    mass: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self) -> None:
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta}")
        if not (self.mass > 0.0 and math.isfinite(self.mass)):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")

    @property
    def momentum_variance(self) -> float:
        """Variance m hbar / beta of the momentum smearing density."""
        return self.mass * self.constants.hbar / self.beta


@dataclass(frozen=True)
class MomentumGrid:
    """Uniform momentum grid, symmetric about ``center`` (0 by default)."""

    n_points: int
    p_max: float
    center: float = 0.0

    def __post_init__(self) -> None:
        n = int(self.n_points)
        object.__setattr__(self, "n_points", n)
        if n < 2:
            raise ValueError(f"n_points must be at least 2, got {n}")
        if not (self.p_max > 0.0 and math.isfinite(self.p_max)):
            raise ValueError(f"p_max must be positive and finite, got {self.p_max}")
        if not math.isfinite(self.center):
            raise ValueError(f"center must be finite, got {self.center}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.p_max / (self.n_points - 1)

    def points(self) -> np.ndarray:
        # exactly mirror-symmetric offsets, so even densities sample evenly
        offsets = (np.arange(self.n_points) - (self.n_points - 1) / 2.0) * self.spacing
        return self.center + offsets


@dataclass(frozen=True)
class MomentumMixture:
    """Diagonal mixed state over a momentum grid; weights integrate to one."""

    grid: MomentumGrid
    weights: np.ndarray

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=float)
        if weights.shape != (self.grid.n_points,):
            raise ValueError("weights must match the grid size")
        if np.any(weights < 0.0):
            raise NormalizationError("weights must be nonnegative")
        total = float(np.sum(weights)) * self.grid.spacing
        if abs(total - 1.0) > GRID_NORM_TOL:
            raise NormalizationError(f"weights integrate to {total!r}, expected 1")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)


def energy_smearing_density(tp: ThermalParameters, E_grid: np.ndarray) -> np.ndarray:
    """Density of the kinetic energy E = p^2 / 2m under the momentum smearing.

    Both momentum branches +-p map to the same energy, so the density is
    sqrt(beta / (pi E hbar)) exp(-E beta / hbar); it integrates to one over
    E > 0 (integrable singularity at E = 0).
    """
    E = np.asarray(E_grid, dtype=float)
    if np.any(E <= 0.0) or not np.all(np.isfinite(E)):
        raise DomainError("energies must be strictly positive and finite")
    hbar = tp.constants.hbar
    return np.sqrt(tp.beta / (np.pi * E * hbar)) * np.exp(-E * tp.beta / hbar)


def momentum_smearing_density(tp: ThermalParameters, p_grid: np.ndarray) -> np.ndarray:
    """Gaussian momentum density with variance m hbar / beta, centered at 0."""
    p = np.asarray(p_grid, dtype=float)
    hbar = tp.constants.hbar
    coeff = tp.beta / (2.0 * tp.mass * hbar)
    return np.sqrt(coeff / np.pi) * np.exp(-coeff * p * p)


def energy_momentum_consistency(tp: ThermalParameters, n_check: int = 32) -> float:
    """Change-of-variables identity between the two smearing densities.

    Verifies rho_E(E(p)) * |dE/dp| = rho_p(p) + rho_p(-p) with E = p^2 / 2m,
    dE/dp = p/m, at ``n_check`` momenta (p = 0 excluded: the Jacobian
    vanishes there). Returns the maximum pointwise relative error.
    """
    if n_check < 10:
        raise ValueError(f"n_check must be at least 10, got {n_check}")
    sd = math.sqrt(tp.momentum_variance)
    p = np.linspace(0.05 * sd, 6.0 * sd, n_check)
    energies = p**2 / (2.0 * tp.mass)
    lhs = energy_smearing_density(tp, energies) * (p / tp.mass)
    rhs = momentum_smearing_density(tp, p) + momentum_smearing_density(tp, -p)
    return float(np.max(np.abs(lhs - rhs) / rhs))


def beta_of_temperature(T: float, constants: PhysicalConstants = NATURAL_UNITS) -> float:
    """beta = hbar / (k_B T)."""
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError(f"temperature must be positive and finite, got {T}")
    return constants.hbar / (constants.k_boltzmann * T)


def temperature_of_beta(beta: float, constants: PhysicalConstants = NATURAL_UNITS) -> float:
    """T = hbar / (k_B beta); inverse of :func:`beta_of_temperature`."""
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"beta must be positive and finite, got {beta}")
    return constants.hbar / (constants.k_boltzmann * beta)


def maxwell_boltzmann_density(
    p_grid: np.ndarray,
    T: float,
    mass: float,
    constants: PhysicalConstants = NATURAL_UNITS,
) -> np.ndarray:
    """1-D Maxwell-Boltzmann momentum distribution at temperature T."""
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError(f"temperature must be positive and finite, got {T}")
    p = np.asarray(p_grid, dtype=float)
    mkt = mass * constants.k_boltzmann * T
    return np.sqrt(1.0 / (2.0 * np.pi * mkt)) * np.exp(-p * p / (2.0 * mkt))


def thermal_state(tp: ThermalParameters, p_grid: MomentumGrid) -> MomentumMixture:
    """Momentum-diagonal state with the smearing density as its weights."""
    if p_grid.center != 0.0:
        raise DomainError("thermal states live on a grid centered at zero momentum")
    sd = math.sqrt(tp.momentum_variance)
    if p_grid.p_max < 8.0 * sd:
        raise DomainError(
            f"grid p_max={p_grid.p_max} truncates the thermal state: need >= {8.0 * sd}"
        )
    weights = momentum_smearing_density(tp, p_grid.points())
    weights = weights / (float(np.sum(weights)) * p_grid.spacing)
    return MomentumMixture(p_grid, weights)


def time_translate_diagonal(
    state: MomentumMixture, t0: float, tp: ThermalParameters
) -> MomentumMixture:
    """Apply a sharp time translation to a momentum-diagonal state.

    The phases exp(i E t0 / hbar) are applied on both sides of the diagonal
    and cancel, so the result always equals the input; the cancellation is
    carried out numerically rather than assumed.
    """
    if not math.isfinite(t0):
        raise DomainError(f"t0 must be finite, got {t0}")
    p = state.grid.points()
    energies = p**2 / (2.0 * tp.mass)
    phases = np.exp(1j * energies * t0 / tp.constants.hbar)
    new_weights = np.real(phases * state.weights * np.conj(phases))
    return MomentumMixture(state.grid, new_weights)


def grid_purity_proxy(state: MomentumMixture) -> float:
    """Sum of squared weights times the grid spacing; increases with beta."""
    return float(np.sum(state.weights**2)) * state.grid.spacing


def pointwise_gap(m1: MomentumMixture, m2: MomentumMixture) -> float:
    """Maximum absolute weight difference between two states on one grid."""
    if m1.grid != m2.grid:
        raise GridMismatchError("momentum mixtures live on different grids")
    return float(np.max(np.abs(m1.weights - m2.weights)))


def momentum_mixture_csv(state: MomentumMixture) -> str:
    """CSV export with header ``p,weight``."""
    from .textio import csv_table, fmt

    p = state.grid.points()
    rows = ([fmt(p[i]), fmt(state.weights[i])] for i in range(p.size))
    return csv_table(["p", "weight"], rows)


def energy_density_csv(E_grid: np.ndarray, values: np.ndarray) -> str:
    """CSV export with header ``E,density``."""
    from .textio import csv_table, fmt

    E = np.asarray(E_grid, dtype=float)
    v = np.asarray(values, dtype=float)
    if E.shape != v.shape:
        raise ValueError("energy grid and values must have matching shapes")
    rows = ([fmt(E[i]), fmt(v[i])] for i in range(E.size))
    return csv_table(["E", "density"], rows)
