"""Thermal master equation for a qubit dissipating into N finite-temperature
reservoirs: generator construction, fixed-step RK4 time integration, and the
closed-form steady state with its effective temperature.

Units: hbar = k_B = 1; temperatures in units of the qubit splitting, times
scaled by the common mode frequency omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmat
from .errors import GuardViolation

# Weak-coupling guard: relaxation rates must stay well below the qubit frequency.
WEAK_COUPLING_MAX = 0.2
# Integrator stability guard on dt * Gamma * (nbar + 1).
RK4_STABILITY_MAX = 0.1


@dataclass(frozen=True)
class ThermalBath:
    """One reservoir: temperature, relaxation rate and mode frequency."""

    temperature: float
    rate: float
    frequency: float

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError(f"bath temperature must be >= 0, got {self.temperature}")
        if self.rate <= 0:
            raise ValueError(f"bath rate must be positive, got {self.rate}")
        if self.frequency <= 0:
            raise ValueError(f"bath frequency must be positive, got {self.frequency}")

    @property
    def occupation(self) -> float:
        return thermal_occupation(self.frequency, self.temperature)


@dataclass(frozen=True)
class SystemConfig:
    """Qubit frequency plus the reservoirs it dissipates into."""

    omega_s: float
    baths: tuple[ThermalBath, ...]

    def __post_init__(self):
        if self.omega_s <= 0:
            raise ValueError(f"qubit frequency must be positive, got {self.omega_s}")
        object.__setattr__(self, "baths", tuple(self.baths))
        if not self.baths:
            raise ValueError("at least one bath is required")
        for i, bath in enumerate(self.baths):
            if abs(bath.frequency - self.omega_s) > 1e-12 * self.omega_s:
                raise ValueError(
                    f"bath {i} frequency {bath.frequency} differs from the qubit "
                    f"frequency {self.omega_s}; resonant reservoirs are required"
                )
            if bath.rate / self.omega_s > WEAK_COUPLING_MAX:
                raise GuardViolation(
                    f"bath {i} rate {bath.rate} exceeds the weak-coupling guard "
                    f"{WEAK_COUPLING_MAX} * omega_s = {WEAK_COUPLING_MAX * self.omega_s}"
                )


def make_config(temperatures, rates, omega: float = 1.0) -> SystemConfig:
    """Build a SystemConfig from parallel temperature/rate lists, all resonant."""
    temperatures = tuple(float(t) for t in temperatures)
    rates = tuple(float(g) for g in rates)
    if len(temperatures) != len(rates):
        raise ValueError(
            f"{len(temperatures)} temperatures but {len(rates)} rates"
        )
    baths = tuple(ThermalBath(t, g, omega) for t, g in zip(temperatures, rates))
    return SystemConfig(omega, baths)


def thermal_occupation(omega: float, temperature: float) -> float:
    """Mean occupation 1/(exp(omega/T) - 1) of a mode at temperature T; 0 at T=0."""
    if omega <= 0:
        raise ValueError(f"mode frequency must be positive, got {omega}")
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0:
        return 0.0
    return 1.0 / math.expm1(omega / temperature)


def _dissipator(op: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """D[op] rho = op rho op^dag - {op^dag op, rho}/2."""
    opd = op.conj().T
    anti = opd @ op
    return op @ rho @ opd - 0.5 * (anti @ rho + rho @ anti)


def _apply_generator(config: SystemConfig, rho: np.ndarray) -> np.ndarray:
    """Linear action of the full generator on an arbitrary 2x2 matrix."""
    h = 0.5 * config.omega_s * qmat.pauli("z")
    out = -1j * (h @ rho - rho @ h)
    lower = qmat.pauli("minus")
    raise_ = qmat.pauli("plus")
    for bath in config.baths:
        n = bath.occupation
        out += bath.rate * ((n + 1.0) * _dissipator(lower, rho) + n * _dissipator(raise_, rho))
    return out


def lindblad_rhs(config: SystemConfig, rho: np.ndarray) -> np.ndarray:
    """d(rho)/dt: coherent rotation plus one thermal dissipator pair per bath.

    The result is Hermitian and traceless for Hermitian input.
    """
    return _apply_generator(config, np.asarray(rho, dtype=complex))


# Real coordinates (p_e, p_g, Re c, Im c) with c the |e><g| coherence; the
# basis variations below are d(rho)/d(coordinate).
_COORD_BASIS = (
    np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex),
    np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, 1.0j], [-1.0j, 0.0]], dtype=complex),
)


def _to_coords(rho: np.ndarray) -> np.ndarray:
    return np.array(
        [rho[0, 0].real, rho[1, 1].real, rho[0, 1].real, rho[0, 1].imag], dtype=float
    )


def _from_coords(y: np.ndarray) -> np.ndarray:
    c = y[2] + 1j * y[3]
    return np.array([[y[0], c], [np.conj(c), y[1]]], dtype=complex)


def real_generator(config: SystemConfig) -> np.ndarray:
    """4x4 real matrix K with dy/dt = K y on (p_e, p_g, Re c, Im c).

    Built column by column by applying the master-equation right-hand side to
    the coordinate basis variations, so it is the same linear map as
    lindblad_rhs by construction.
    """
    k = np.empty((4, 4), dtype=float)
    for j, basis in enumerate(_COORD_BASIS):
        k[:, j] = _to_coords(_apply_generator(config, basis))
    return k


@dataclass
class Trajectory:
    """Recorded time evolution: states renormalized to unit trace, with the
    effective temperature of each (NaN where populations are inverted)."""

    times: np.ndarray
    states: list
    temperatures: np.ndarray
    max_trace_drift: float = 0.0

    def __post_init__(self):
        if len(self.times) != len(self.states) or len(self.times) != len(self.temperatures):
            raise ValueError("times, states and temperatures must have equal length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def final_temperature(self) -> float:
        return float(self.temperatures[-1])


def _population_temperature(p_g: float, p_e: float, omega: float) -> float:
    """Boltzmann-ratio temperature, permissive: 0 for an empty excited level,
    inf for equal populations, NaN for inverted populations."""
    if p_e <= 0.0:
        return 0.0
    if p_e > p_g:
        return math.nan
    if p_e == p_g:
        return math.inf
    return omega / math.log(p_g / p_e)


def effective_temperature(p_g: float, p_e: float, omega_s: float) -> float:
    """Temperature assigned to a two-level state via T = omega / ln(p_g/p_e).

    Population inversion (p_e > p_g) is rejected: thermal reservoirs cannot
    produce it at steady state, so it signals an upstream bug.
    """
    if abs(p_g + p_e - 1.0) > 1e-9:
        raise ValueError(f"populations must sum to 1, got {p_g + p_e}")
    if p_g < 0 or p_e < 0:
        raise ValueError(f"populations must be nonnegative, got ({p_g}, {p_e})")
    if p_e > p_g:
        raise ValueError(f"population inversion p_e={p_e} > p_g={p_g} is not thermal")
    return _population_temperature(p_g, p_e, omega_s)


def steady_population_ratio(config: SystemConfig) -> float:
    """Steady-state p_g/p_e = sum_i (nbar_i + 1) Gamma_i / sum_i nbar_i Gamma_i.

    Exact for any number of reservoirs; +inf when every bath sits at T = 0
    (pure ground steady state).
    """
    up = sum(b.rate * b.occupation for b in config.baths)
    down = sum(b.rate * (b.occupation + 1.0) for b in config.baths)
    if up == 0.0:
        return math.inf
    return down / up


def steady_state(config: SystemConfig) -> np.ndarray:
    """Diagonal steady state diag(p_e, p_g); coherences are fully damped."""
    ratio = steady_population_ratio(config)
    if math.isinf(ratio):
        return qmat.ground_state()
    p_e = 1.0 / (1.0 + ratio)
    return np.diag([p_e, 1.0 - p_e]).astype(complex)


def steady_temperature(config: SystemConfig) -> float:
    """Effective temperature of the steady state."""
    temps = {b.temperature for b in config.baths}
    if len(temps) == 1:
        # identical reservoirs thermalize the qubit to their own temperature;
        # returning it directly keeps the boundary of the decision rule exact
        return temps.pop()
    ratio = steady_population_ratio(config)
    if math.isinf(ratio):
        return 0.0
    return config.omega_s / math.log(ratio)


def mean_bath_temperature(config: SystemConfig) -> float:
    """Arithmetic mean of the reservoir temperatures."""
    return sum(b.temperature for b in config.baths) / len(config.baths)


def _coord_trace_distance(dy: np.ndarray) -> float:
    """Trace distance between two states given the difference of coordinates."""
    half_split = 0.5 * (dy[0] - dy[1])
    half_trace = 0.5 * (dy[0] + dy[1])
    radius = math.hypot(half_split, math.hypot(dy[2], dy[3]))
    return 0.5 * (abs(half_trace + radius) + abs(half_trace - radius))


def evolve(
    config: SystemConfig,
    rho0: np.ndarray,
    t_end: float,
    dt: float,
    record_every: float = 1.0,
    stop_tol: float | None = 1e-9,
) -> Trajectory:
    """Integrate the master equation with fixed-step RK4.

    The generator is linear and time independent, so the RK4 update is
    applied as its exact one-step matrix (the degree-4 Taylor polynomial of
    exp(dt K)); this is arithmetically the classical RK4 step.  States are
    recorded every `record_every` time units plus the final state, each
    renormalized to unit trace; the raw trace drift is tracked on the side.

    When stop_tol is set, integration stops early once the state moves less
    than stop_tol (trace distance) over one time unit; t_end is a hard cap.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end < dt:
        raise ValueError(f"t_end={t_end} shorter than one step dt={dt}")
    fastest = max(b.rate * (b.occupation + 1.0) for b in config.baths)
    if dt * fastest > RK4_STABILITY_MAX:
        raise GuardViolation(
            f"dt * max(Gamma*(nbar+1)) = {dt * fastest:.3g} exceeds "
            f"{RK4_STABILITY_MAX}; shrink dt below {RK4_STABILITY_MAX / fastest:.3g}"
        )
    qmat.validate_density_matrix(rho0, "initial state")

    k = real_generator(config)
    hk = dt * k
    step = np.eye(4) + hk @ (np.eye(4) + hk @ (np.eye(4) + hk @ (np.eye(4) + hk / 4.0) / 3.0) / 2.0)

    n_steps = int(round(t_end / dt))
    record_stride = max(1, int(round(record_every / dt)))
    check_stride = max(1, int(round(1.0 / dt)))

    y = _to_coords(np.asarray(rho0, dtype=complex))
    times = [0.0]
    records = [y.copy()]
    y_check = y.copy()
    for i in range(1, n_steps + 1):
        y = step @ y
        if i % record_stride == 0:
            times.append(i * dt)
            records.append(y.copy())
        if stop_tol is not None and i % check_stride == 0:
            if _coord_trace_distance(y - y_check) < stop_tol:
                if i % record_stride != 0:
                    times.append(i * dt)
                    records.append(y.copy())
                break
            y_check = y.copy()
    else:
        if n_steps % record_stride != 0:
            times.append(n_steps * dt)
            records.append(y.copy())

    drift = max(abs(r[0] + r[1] - 1.0) for r in records)
    states = []
    temps = []
    for r in records:
        rho = _from_coords(r)
        rho /= np.trace(rho).real
        states.append(rho)
        temps.append(_population_temperature(rho[1, 1].real, rho[0, 0].real, config.omega_s))
    return Trajectory(
        times=np.asarray(times),
        states=states,
        temperatures=np.asarray(temps),
        max_trace_drift=drift,
    )
