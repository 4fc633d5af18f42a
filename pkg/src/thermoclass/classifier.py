"""Binary classification on the steady-state temperature: decision rules,
relaxation-curve and rate-sweep tables, random labeled instances, and a
classical perceptron used to certify that the labeled instances are linearly
separable.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import lindblad, qmat
from .tables import ResultTable

CLASS_HOT = "class1"   # steady temperature at or above the threshold
CLASS_COLD = "class2"

GAMMA_SPACE = "gamma"
TEMPERATURE_SPACE = "temperature"


@dataclass(frozen=True)
class DecisionRule:
    """Threshold rule: either the per-instance mean of the bath temperatures
    or a fixed value theta.

    With equal coupling rates the steady temperature never falls below the
    instance mean (the mode occupation is convex in temperature), so the
    per-instance-mean rule labels every equal-rate instance hot-side; a fixed
    threshold is the mode that yields a genuine two-class split of the
    temperature plane and is the default throughout the CLI.
    """

    mode: str
    theta: float | None = None

    def __post_init__(self):
        if self.mode not in ("instance_mean", "fixed_threshold"):
            raise ValueError(f"unknown decision rule mode {self.mode!r}")
        if self.mode == "fixed_threshold":
            if self.theta is None or self.theta <= 0:
                raise ValueError(f"fixed_threshold requires theta > 0, got {self.theta}")
        elif self.theta is not None:
            raise ValueError("instance_mean takes no theta")

    @classmethod
    def instance_mean(cls) -> "DecisionRule":
        return cls(mode="instance_mean")

    @classmethod
    def fixed(cls, theta: float) -> "DecisionRule":
        return cls(mode="fixed_threshold", theta=theta)

    def threshold_for(self, config: lindblad.SystemConfig) -> float:
        if self.mode == "instance_mean":
            return lindblad.mean_bath_temperature(config)
        return self.theta


@dataclass(frozen=True)
class ClassificationResult:
    steady_temperature: float
    threshold: float
    label: str


@dataclass(frozen=True)
class LabeledPoint:
    features: tuple
    steady_temperature: float
    label: str


def classify(config: lindblad.SystemConfig, rule: DecisionRule) -> ClassificationResult:
    """Label one reservoir configuration from its closed-form steady
    temperature; the threshold comparison is inclusive on the hot side."""
    t_ss = lindblad.steady_temperature(config)
    threshold = rule.threshold_for(config)
    label = CLASS_HOT if t_ss >= threshold else CLASS_COLD
    return ClassificationResult(steady_temperature=t_ss, threshold=threshold, label=label)


def thermalization_curves(
    configs, t_end: float = 2000.0, dt: float = 0.05, sample_every: float = 1.0
) -> ResultTable:
    """Integrate each configuration from the ground state (zero temperature)
    on a shared time grid and tabulate the effective temperature curves."""
    configs = list(configs)
    if not configs:
        raise ValueError("at least one configuration is required")
    trajectories = [
        lindblad.evolve(
            cfg, qmat.ground_state(), t_end, dt, record_every=sample_every, stop_tol=None
        )
        for cfg in configs
    ]
    times = trajectories[0].times
    columns = ["time"] + [f"T_S_curve{i + 1}" for i in range(len(configs))]
    rows = [
        tuple([times[k]] + [float(traj.temperatures[k]) for traj in trajectories])
        for k in range(len(times))
    ]
    return ResultTable(columns=columns, rows=rows)


def gamma_sweep(
    t1: float, t2: float, gamma_total: float, n_points: int = 41, omega: float = 1.0
) -> ResultTable:
    """Steady temperature along the rate split Gamma_1 = Gamma/2 + d,
    Gamma_2 = Gamma/2 - d for d across [-Gamma/2, +Gamma/2].

    The endpoints are the single-reservoir limits (one rate exactly zero) and
    are evaluated as such, so they reproduce the bath temperatures exactly.
    """
    if n_points < 3:
        raise ValueError(f"need at least 3 sweep points, got {n_points}")
    if gamma_total <= 0:
        raise ValueError(f"gamma_total must be positive, got {gamma_total}")
    deltas = np.linspace(-gamma_total / 2.0, gamma_total / 2.0, n_points)
    rows = []
    for d in deltas:
        g1 = gamma_total / 2.0 + d
        g2 = gamma_total / 2.0 - d
        if g2 == 0.0:
            t_ss = lindblad.steady_temperature(lindblad.make_config((t1,), (g1,), omega))
        elif g1 == 0.0:
            t_ss = lindblad.steady_temperature(lindblad.make_config((t2,), (g2,), omega))
        else:
            t_ss = lindblad.steady_temperature(lindblad.make_config((t1, t2), (g1, g2), omega))
        rows.append((float(d), float(g1), float(g2), t_ss))
    return ResultTable(columns=["delta_gamma", "gamma1", "gamma2", "steady_temperature"], rows=rows)


def _label_temperature_point(args) -> LabeledPoint:
    (x1, x2), gammas, rule, omega = args
    config = lindblad.make_config((x1, x2), gammas, omega)
    result = classify(config, rule)
    return LabeledPoint(features=(x1, x2), steady_temperature=result.steady_temperature, label=result.label)


def _label_gamma_point(args) -> LabeledPoint:
    (x1, x2), temps, rule, omega = args
    config = lindblad.make_config(temps, (x1, x2), omega)
    result = classify(config, rule)
    return LabeledPoint(features=(x1, x2), steady_temperature=result.steady_temperature, label=result.label)


def _map_ordered(fn, items, jobs: int):
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def generate_instances(
    space: str,
    n: int,
    ranges,
    seed: int,
    rule: DecisionRule,
    fixed,
    omega: float = 1.0,
    jobs: int = 1,
) -> list[LabeledPoint]:
    """Draw n uniform feature pairs and label each by its steady temperature.

    space="temperature": features are bath temperatures, fixed = the two
    coupling rates; space="gamma": features are coupling rates, fixed = the
    two bath temperatures. ranges is ((lo, hi), (lo, hi)) per feature axis.
    Identical seeds reproduce identical point sets bit for bit.
    """
    if n < 1:
        raise ValueError(f"need at least one instance, got n={n}")
    (lo1, hi1), (lo2, hi2) = ranges
    if not (0 <= lo1 < hi1 and 0 <= lo2 < hi2):
        raise ValueError(f"ranges must be positive and increasing, got {ranges}")
    if space == GAMMA_SPACE:
        # reject rate ranges that could leave the weak-coupling regime
        if max(hi1, hi2) / omega > lindblad.WEAK_COUPLING_MAX:
            raise ValueError(
                f"rate range upper bound {max(hi1, hi2)} violates the weak-coupling "
                f"guard {lindblad.WEAK_COUPLING_MAX} * omega"
            )
        worker = _label_gamma_point
    elif space == TEMPERATURE_SPACE:
        worker = _label_temperature_point
    else:
        raise ValueError(f"space must be {GAMMA_SPACE!r} or {TEMPERATURE_SPACE!r}, got {space!r}")

    rng = np.random.default_rng(seed)
    x1 = rng.uniform(lo1, hi1, n)
    x2 = rng.uniform(lo2, hi2, n)
    fixed = tuple(float(v) for v in fixed)
    return _map_ordered(worker, [((a, b), fixed, rule, omega) for a, b in zip(x1, x2)], jobs)


def activation(kind: str, y: float) -> float:
    """step: +-1 with the tie at zero resolved to +1; linear: the identity."""
    if kind == "step":
        return 1.0 if y >= 0 else -1.0
    if kind == "linear":
        return float(y)
    raise ValueError(f"unknown activation {kind!r}")


@dataclass(frozen=True)
class Perceptron:
    """Linear threshold unit f(w . x + b) in raw feature coordinates."""

    weights: tuple
    bias: float
    activation: str = "step"

    def score(self, features) -> float:
        return float(np.dot(self.weights, features) + self.bias)

    def predict(self, features) -> float:
        return activation(self.activation, self.score(features))


@dataclass(frozen=True)
class NotSeparable:
    """Returned when the training loop exhausts its epoch budget with
    misclassified points remaining."""

    epochs: int
    errors: int


_LABEL_SIGN = {CLASS_HOT: 1.0, CLASS_COLD: -1.0}


def perceptron_fit(
    points, max_epochs: int = 1000, learning_rate: float = 1.0
) -> Perceptron | NotSeparable:
    """Rosenblatt training on labeled points until zero training error.

    Features are standardized to zero mean and unit variance internally
    (raw rate and temperature scales differ by two orders of magnitude and
    stall convergence); the returned weights are mapped back to raw feature
    coordinates and re-verified there. A set containing a single label is
    trivially separable and short-circuits to a constant-side hyperplane.
    """
    points = list(points)
    if len(points) < 2:
        raise ValueError("need at least two points")
    x = np.array([p.features for p in points], dtype=float)
    y = np.array([_LABEL_SIGN[p.label] for p in points])

    if np.all(y == y[0]):
        return Perceptron(weights=(0.0,) * x.shape[1], bias=float(y[0]))

    mean = x.mean(axis=0)
    std = x.std(axis=0)
    std[std == 0.0] = 1.0
    xs = (x - mean) / std

    w = np.zeros(x.shape[1])
    b = 0.0
    errors = len(points)
    for epoch in range(1, max_epochs + 1):
        errors = 0
        for xi, yi in zip(xs, y):
            if activation("step", float(w @ xi + b)) != yi:
                w += learning_rate * yi * xi
                b += learning_rate * yi
                errors += 1
        if errors == 0:
            raw_w = w / std
            raw_b = float(b - np.sum(w * mean / std))
            fitted = Perceptron(weights=tuple(raw_w), bias=raw_b)
            # the raw-space check can only fail on exact-zero score ties
            if all(fitted.predict(p.features) == _LABEL_SIGN[p.label] for p in points):
                return fitted
            errors = 1
    return NotSeparable(epochs=max_epochs, errors=errors)
