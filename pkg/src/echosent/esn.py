"""Leaky echo state network: reservoir construction, state evolution,
ridge-regularized readout training, prediction and NRMSE.

The recurrent weights are random and fixed; only the linear readout is
trained. State update with leak rate psi:

    candidate_t = tanh(A u_{t-1} + w_in * x_t)
    u_t         = (1 - psi) u_{t-1} + psi * candidate_t

The recurrent matrix is generated sparse-uniform and rescaled so its
spectral radius hits the configured target; a target below 1 is the
fading-memory (echo state) necessary condition. Inputs and targets are
z-scored inside the model; predictions are mapped back to the target scale.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

log = logging.getLogger(__name__)

_DENSE_EIG_LIMIT = 300


@dataclass(frozen=True)
class ReservoirConfig:
    size: int
    spectral_radius: float
    leak: float
    input_scale: float
    sparsity: float
    ridge: float
    seed: int
    washout: int = 0

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("size must be >= 1")
        if not (0.0 < self.spectral_radius < 1.0):
            raise ValueError("spectral_radius must be in (0, 1)")
        if not (0.0 < self.leak <= 1.0):
            raise ValueError("leak must be in (0, 1]")
        if self.input_scale <= 0:
            raise ValueError("input_scale must be positive")
        if not (0.0 < self.sparsity <= 1.0):
            raise ValueError("sparsity must be in (0, 1]")
        if self.ridge < 0:
            raise ValueError("ridge must be >= 0")
        if self.washout < 0:
            raise ValueError("washout must be >= 0")


@dataclass(eq=False)
class Reservoir:
    matrix: np.ndarray          # (N, N) recurrent weights, rescaled
    input_weights: np.ndarray   # (N,)
    achieved_radius: float


def spectral_radius(matrix: np.ndarray, method: str = "auto") -> float:
    """Largest eigenvalue magnitude of a (generally nonsymmetric) matrix.

    ``dense`` uses a full eigensolve; ``power`` a two-step power recurrence
    that is safe for complex-conjugate dominant pairs; ``auto`` picks dense
    up to 300x300 and the iteration above that.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if method == "auto":
        method = "dense" if m.shape[0] <= _DENSE_EIG_LIMIT else "power"
    if method == "dense":
        return float(np.max(np.abs(np.linalg.eigvals(m))))
    if method != "power":
        raise ValueError(f"unknown method {method!r}")
    return _power_radius(m)


def _power_radius(m: np.ndarray, max_iter: int = 5000, tol: float = 1e-13) -> float:
    """Spectral radius via power iteration with a two-step eigenvalue fit.

    Fitting m v1 ~ a v1 + b v0 and taking the largest root magnitude of
    mu^2 = a mu + b handles a dominant complex-conjugate pair, where plain
    Rayleigh iteration would not settle.
    """
    n = m.shape[0]
    rng = np.random.default_rng(12345)
    v0 = rng.standard_normal(n)
    v0 /= np.linalg.norm(v0)
    v1 = m @ v0
    estimate = np.inf
    for _ in range(max_iter):
        v2 = m @ v1
        basis = np.stack([v1, v0], axis=1)
        coef, *_ = np.linalg.lstsq(basis, v2, rcond=None)
        roots = np.roots([1.0, -coef[0], -coef[1]])
        new = float(np.max(np.abs(roots)))
        if abs(new - estimate) <= tol * max(new, 1e-300):
            return new
        estimate = new
        scale = np.linalg.norm(v2)
        if scale == 0.0:
            return 0.0
        v0, v1 = v1 / scale, v2 / scale
    return estimate


def build_reservoir(cfg: ReservoirConfig) -> Reservoir:
    """Draw sparse-uniform recurrent/input weights and rescale to the target radius.

    Entries are Bernoulli(sparsity) gates times Uniform[-1, 1] draws, fully
    determined by the seed; the recurrent matrix is rescaled by
    target / rho(raw). An all-zero raw matrix cannot be rescaled and raises.
    """
    n = cfg.size
    rng = np.random.default_rng(cfg.seed)
    gates = rng.random((n, n)) < cfg.sparsity
    draws = rng.uniform(-1.0, 1.0, (n, n))
    raw = np.where(gates, draws, 0.0)
    rho = spectral_radius(raw)
    if rho <= 0.0:
        raise ValueError("degenerate reservoir (zero spectral radius); reseed or raise sparsity")
    matrix = raw * (cfg.spectral_radius / rho)
    in_gates = rng.random(n) < cfg.sparsity
    in_draws = rng.uniform(-1.0, 1.0, n)
    input_weights = cfg.input_scale * np.where(in_gates, in_draws, 0.0)
    if not np.any(input_weights):
        log.warning("all input weights are zero (sparsity=%g); reservoir sees no input", cfg.sparsity)
    achieved = spectral_radius(matrix)
    return Reservoir(matrix, input_weights, achieved)


def run_states(
    reservoir: Reservoir,
    cfg: ReservoirConfig,
    inputs: np.ndarray,
    initial_state: np.ndarray | None = None,
) -> np.ndarray:
    """Drive the reservoir with a (normalized) input sequence; returns (T, N) states."""
    x = np.asarray(inputs, dtype=float)
    if x.ndim != 1:
        raise ValueError("inputs must be one-dimensional")
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite input")
    n = reservoir.matrix.shape[0]
    u = np.zeros(n) if initial_state is None else np.asarray(initial_state, dtype=float).copy()
    if u.shape != (n,):
        raise ValueError("initial state has wrong shape")
    leak = cfg.leak
    states = np.empty((len(x), n))
    for t in range(len(x)):
        candidate = np.tanh(reservoir.matrix @ u + reservoir.input_weights * x[t])
        u = (1.0 - leak) * u + leak * candidate
        states[t] = u
    return states


def train_readout(
    states: np.ndarray, targets: np.ndarray, ridge: float, washout: int = 0
) -> np.ndarray:
    """Closed-form ridge solution of the readout weights on post-washout states.

    Solves (U^T U + ridge I) w = U^T y with U the (rows = time) state matrix.
    Raises if the normal equations are singular, which can only happen with
    ridge 0.
    """
    u = np.asarray(states, dtype=float)
    y = np.asarray(targets, dtype=float)
    if u.ndim != 2 or y.ndim != 1 or len(u) != len(y):
        raise ValueError("states must be (T, N) and targets (T,) of equal length")
    u = u[washout:]
    y = y[washout:]
    n = u.shape[1]
    if len(u) < n:
        log.warning("only %d post-washout samples for %d reservoir units", len(u), n)
    gram = u.T @ u + ridge * np.eye(n)
    rhs = u.T @ y
    try:
        np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise ValueError(
            f"readout normal equations are singular (ridge={ridge}); use ridge > 0"
        ) from None
    return np.linalg.solve(gram, rhs)


def nrmse(predictions: np.ndarray, observations: np.ndarray) -> float:
    """Root-mean-squared error divided by the observation mean.

    The observation mean is the normalizer, so it must be bounded away from
    zero; z-scoring the target is disallowed for this metric.
    """
    pred = np.asarray(predictions, dtype=float)
    obs = np.asarray(observations, dtype=float)
    if pred.shape != obs.shape or pred.ndim != 1 or len(pred) == 0:
        raise ValueError("predictions and observations must be equal-length 1-D arrays")
    mean = float(np.mean(obs))
    if abs(mean) < 1e-9:
        raise ValueError(
            "NRMSE undefined for (near-)zero-mean series; "
            "z-scoring the target is disallowed for this metric"
        )
    return float(np.sqrt(np.mean((pred - obs) ** 2)) / mean)


@dataclass(eq=False)
class EsnModel:
    reservoir: Reservoir
    config: ReservoirConfig
    readout: np.ndarray
    input_mean: float
    input_sd: float
    target_mean: float
    target_sd: float
    trained: bool = False


def _scale_stats(values: np.ndarray) -> tuple[float, float]:
    mean = float(np.mean(values))
    sd = float(np.std(values))
    return mean, sd if sd > 0 else 1.0


def fit_esn(cfg: ReservoirConfig, inputs: np.ndarray, targets: np.ndarray) -> EsnModel:
    """Build the reservoir, run z-scored inputs, train the readout on z-scored targets."""
    x = np.asarray(inputs, dtype=float)
    y = np.asarray(targets, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValueError("inputs and targets must be equal-length 1-D arrays (length >= 2)")
    reservoir = build_reservoir(cfg)
    x_mean, x_sd = _scale_stats(x)
    y_mean, y_sd = _scale_stats(y)
    states = run_states(reservoir, cfg, (x - x_mean) / x_sd)
    readout = train_readout(states, (y - y_mean) / y_sd, cfg.ridge, cfg.washout)
    return EsnModel(reservoir, cfg, readout, x_mean, x_sd, y_mean, y_sd, trained=True)


def predict(model: EsnModel, inputs: np.ndarray) -> np.ndarray:
    """Readout applied to fresh states, mapped back to the target scale."""
    if not model.trained:
        raise ValueError("model is untrained")
    x = np.asarray(inputs, dtype=float)
    states = run_states(model.reservoir, model.config, (x - model.input_mean) / model.input_sd)
    return states @ model.readout * model.target_sd + model.target_mean


# ---------------------------------------------------------------------------
# Model dump format: a .npz archive, format version 1, with the config as a
# JSON header string and the weight matrices as arrays.

_DUMP_VERSION = 1


def save_model(model: EsnModel, path: str | Path) -> None:
    header = {
        "format_version": _DUMP_VERSION,
        "config": {
            "size": model.config.size,
            "spectral_radius": model.config.spectral_radius,
            "leak": model.config.leak,
            "input_scale": model.config.input_scale,
            "sparsity": model.config.sparsity,
            "ridge": model.config.ridge,
            "seed": model.config.seed,
            "washout": model.config.washout,
        },
        "trained": model.trained,
        "input_mean": model.input_mean,
        "input_sd": model.input_sd,
        "target_mean": model.target_mean,
        "target_sd": model.target_sd,
        "achieved_radius": model.reservoir.achieved_radius,
    }
    with Path(path).open("wb") as fh:
        np.savez(
            fh,
            header=np.frombuffer(json.dumps(header).encode(), dtype=np.uint8),
            matrix=model.reservoir.matrix,
            input_weights=model.reservoir.input_weights,
            readout=model.readout,
        )


def load_model(path: str | Path) -> EsnModel:
    with np.load(path) as data:
        header = json.loads(bytes(data["header"]).decode())
        if header.get("format_version") != _DUMP_VERSION:
            raise ValueError(f"unsupported model dump version {header.get('format_version')}")
        cfg = ReservoirConfig(**header["config"])
        reservoir = Reservoir(
            data["matrix"].copy(), data["input_weights"].copy(), header["achieved_radius"]
        )
        return EsnModel(
            reservoir,
            cfg,
            data["readout"].copy(),
            header["input_mean"],
            header["input_sd"],
            header["target_mean"],
            header["target_sd"],
            trained=header["trained"],
        )
