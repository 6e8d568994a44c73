"""Lag-scanned cross mapping with reservoir models.

For a candidate lag, a readout is trained to predict the target series
shifted by that lag from the reservoir states of the input series; the
Pearson correlation between predictions and observations, traced over a lag
grid, gives a correlation curve per direction. Peak lag signs classify the
coupling: recovering a cause from its effect peaks at a negative lag, so a
pair whose input->target curve peaks at a positive lag while the reverse
curve peaks at a negative lag indicates the input series is the cause.

Hyperparameters are picked by leave-one-unit-out cross validation over a
config grid, scored by mean held-out NRMSE.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .esn import ReservoirConfig, build_reservoir, nrmse, run_states

log = logging.getLogger(__name__)

CLASSIFICATIONS = (
    "X_causes_Y",
    "Y_causes_X",
    "bidirectional",
    "instantaneous_bidirectional",
    "delayed_coupling",
    "inconclusive",
)

WEAK_THRESHOLD = 0.2
MIN_WINDOW = 10

#: Reservoir defaults for cross-mapping runs; moderate memory plus enough
#: ridge to keep noise-pair correlation curves flat.
DEFAULT_CCM_PARAMS = dict(
    size=100,
    spectral_radius=0.5,
    leak=0.5,
    input_scale=0.5,
    sparsity=0.1,
    ridge=10.0,
    washout=30,
)


def default_ccm_config(seed: int = 0) -> "ReservoirConfig":
    return ReservoirConfig(seed=seed, **DEFAULT_CCM_PARAMS)


@dataclass(frozen=True)
class LagGrid:
    lo: int = -30
    hi: int = 30

    def __post_init__(self) -> None:
        if not (self.lo < 0 < self.hi):
            raise ValueError("lag grid must straddle zero (lo < 0 < hi)")

    def values(self) -> tuple[int, ...]:
        return tuple(range(self.lo, self.hi + 1))


def align_window(length: int, lag: int) -> tuple[slice, slice]:
    """Index ranges pairing input time t with target time t + lag.

    Returns ``(input_slice, target_slice)`` of equal length ``length -
    abs(lag)``. In one-based terms the input range is
    ``[1 + |lag| - h, length - h]`` with ``h = max(lag, 0)``.
    """
    if abs(lag) >= length:
        raise ValueError(f"|lag|={abs(lag)} must be smaller than the series length {length}")
    if lag >= 0:
        return slice(0, length - lag), slice(lag, length)
    k = -lag
    return slice(k, length), slice(0, length - k)


def pearson(a: Sequence[float], b: Sequence[float]) -> float:
    """Standard sample Pearson correlation."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValueError("pearson needs two equal-length 1-D arrays of length >= 2")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(xc @ xc)
    sy = float(yc @ yc)
    if sx == 0.0 or sy == 0.0:
        raise ValueError("constant series")
    return float((xc @ yc) / math.sqrt(sx * sy))


@dataclass(frozen=True)
class LagCorrelationCurve:
    """Correlation over the lag grid for one mapping direction.

    ``direction`` names the input series first ("x->y" maps reservoir states
    of x to y). Peak ties break toward the smallest |lag|, then toward the
    negative lag.
    """

    direction: str
    lags: tuple[int, ...]
    rhos: tuple[float, ...]
    peak_lag: int
    peak_rho: float
    skipped: tuple[int, ...] = ()


def _solve_ridge(gram: np.ndarray, rhs: np.ndarray, ridge: float) -> np.ndarray:
    try:
        np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise ValueError(
            f"readout normal equations are singular (ridge={ridge}); use ridge > 0"
        ) from None
    return np.linalg.solve(gram, rhs)


def cross_map_curve(
    inputs: np.ndarray,
    targets: np.ndarray,
    cfg: ReservoirConfig,
    grid: LagGrid = LagGrid(),
    direction: str = "x->y",
    min_window: int = MIN_WINDOW,
    states: np.ndarray | None = None,
) -> LagCorrelationCurve:
    """Fit one readout per lag and trace the prediction correlation.

    Reservoir states are computed once from the z-scored input series; per
    lag, the readout is ridge-trained on the aligned window (the first
    ``cfg.washout`` state rows of the series are excluded) and evaluated in
    place. Lags whose effective window is shorter than ``min_window`` are
    skipped with a warning.
    """
    x = np.asarray(inputs, dtype=float)
    y = np.asarray(targets, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("input and target series must be equal-length 1-D arrays")
    t_len = len(x)
    if states is None:
        sd = float(np.std(x))
        xz = (x - float(np.mean(x))) / (sd if sd > 0 else 1.0)
        states = run_states(build_reservoir(cfg), cfg, xz)

    lags: list[int] = []
    rhos: list[float] = []
    skipped: list[int] = []
    eye = np.eye(cfg.size)
    for lag in grid.values():
        if abs(lag) >= t_len:
            skipped.append(lag)
            continue
        s_in, s_out = align_window(t_len, lag)
        shift = max(s_in.start, cfg.washout) - s_in.start
        u = states[s_in.start + shift:s_in.stop]
        obs = y[s_out.start + shift:s_out.stop]
        if len(u) < min_window:
            log.warning("%s: lag %d skipped (window %d < %d)", direction, lag, len(u), min_window)
            skipped.append(lag)
            continue
        mu = float(np.mean(obs))
        sd = float(np.std(obs))
        if sd == 0.0:
            log.warning("%s: lag %d skipped (constant target window)", direction, lag)
            skipped.append(lag)
            continue
        yz = (obs - mu) / sd
        w = _solve_ridge(u.T @ u + cfg.ridge * eye, u.T @ yz, cfg.ridge)
        pred = u @ w
        try:
            rho = pearson(pred, yz)
        except ValueError:
            log.warning("%s: lag %d skipped (degenerate prediction)", direction, lag)
            skipped.append(lag)
            continue
        lags.append(lag)
        rhos.append(rho)
    if not lags:
        raise ValueError("no usable lag in the grid (series too short?)")
    order = sorted(range(len(lags)), key=lambda i: (-rhos[i], abs(lags[i]), lags[i]))
    best = order[0]
    return LagCorrelationCurve(
        direction, tuple(lags), tuple(rhos), lags[best], rhos[best], tuple(skipped)
    )


@dataclass(frozen=True)
class CausalVerdict:
    classification: str
    peak_lag_xy: int
    peak_rho_xy: float
    peak_lag_yx: int
    peak_rho_yx: float
    weak: bool
    note: str = ""


def classify_peaks(
    peak_lag_xy: int,
    peak_lag_yx: int,
    peak_rho_xy: float,
    peak_rho_yx: float,
    weak_threshold: float = WEAK_THRESHOLD,
) -> CausalVerdict:
    """Classification from the two peak lags' signs.

    (x->y positive, y->x negative) reads as "X causes Y" and mirrored for the
    reverse; both negative is bidirectional coupling, both exactly zero is
    instantaneous bidirectional, both positive indicates delay-dominated
    coupling, and any remaining zero/nonzero mix is inconclusive. Peaks that
    are both below the weak threshold in magnitude keep their class but carry
    a weak-relationship note.
    """
    sx = (peak_lag_xy > 0) - (peak_lag_xy < 0)
    sy = (peak_lag_yx > 0) - (peak_lag_yx < 0)
    if sx > 0 and sy < 0:
        label = "X_causes_Y"
    elif sx < 0 and sy > 0:
        label = "Y_causes_X"
    elif sx < 0 and sy < 0:
        label = "bidirectional"
    elif sx == 0 and sy == 0:
        label = "instantaneous_bidirectional"
    elif sx > 0 and sy > 0:
        label = "delayed_coupling"
    else:
        label = "inconclusive"
    weak = max(abs(peak_rho_xy), abs(peak_rho_yx)) < weak_threshold
    note = "weak relationship (both peak correlations below 0.2)" if weak else ""
    return CausalVerdict(
        label, peak_lag_xy, peak_rho_xy, peak_lag_yx, peak_rho_yx, weak, note
    )


def classify(curve_xy: LagCorrelationCurve, curve_yx: LagCorrelationCurve) -> CausalVerdict:
    return classify_peaks(
        curve_xy.peak_lag, curve_yx.peak_lag, curve_xy.peak_rho, curve_yx.peak_rho
    )


def analyze_pair(
    x: np.ndarray,
    y: np.ndarray,
    cfg_xy: ReservoirConfig,
    cfg_yx: ReservoirConfig | None = None,
    grid: LagGrid = LagGrid(),
    min_window: int = MIN_WINDOW,
) -> tuple[LagCorrelationCurve, LagCorrelationCurve, CausalVerdict]:
    """Run both mapping directions and classify the pair."""
    cfg_yx = cfg_yx or cfg_xy
    curve_xy = cross_map_curve(x, y, cfg_xy, grid, "x->y", min_window)
    curve_yx = cross_map_curve(y, x, cfg_yx, grid, "y->x", min_window)
    return curve_xy, curve_yx, classify(curve_xy, curve_yx)


# ---------------------------------------------------------------------------
# Leave-one-unit-out cross-validated grid search.

@dataclass(frozen=True)
class CvCell:
    config_index: int
    unit: str
    nrmse: float


@dataclass(frozen=True)
class CvReport:
    configs: tuple[ReservoirConfig, ...]
    cells: tuple[CvCell, ...]
    scores: Mapping[int, float]
    invalid: Mapping[int, str]
    winner_index: int

    @property
    def winner(self) -> ReservoirConfig:
        return self.configs[self.winner_index]


def _reservoir_key(cfg: ReservoirConfig) -> tuple:
    return (cfg.size, cfg.spectral_radius, cfg.leak, cfg.input_scale, cfg.sparsity, cfg.seed)


def loo_cv_grid_search(
    panel: Mapping[str, tuple[np.ndarray, np.ndarray]],
    configs: Sequence[ReservoirConfig],
) -> CvReport:
    """Score each config by mean NRMSE over leave-one-unit-out folds.

    Each fold trains the readout on the pooled post-washout states of the
    other units (inputs z-scored per unit, targets z-scored with pooled
    training statistics; the reservoir state resets at unit boundaries) and
    evaluates raw-scale NRMSE on the held-out unit. A fold that fails (for
    example a constant or zero-mean target) invalidates the whole config.
    Units are processed in sorted order, so unit ordering cannot change the
    winner; score ties break toward smaller reservoirs, then smaller ridge.
    """
    units = sorted(panel)
    if len(units) < 2:
        raise ValueError("leave-one-out needs at least 2 units")
    if not configs:
        raise ValueError("empty config grid")
    for unit in units:
        x, y = panel[unit]
        if np.asarray(x).shape != np.asarray(y).shape:
            raise ValueError(f"unit {unit!r}: input/target length mismatch")

    cells: list[CvCell] = []
    scores: dict[int, float] = {}
    invalid: dict[int, str] = {}

    by_key = sorted(range(len(configs)), key=lambda i: (_reservoir_key(configs[i]), i))
    pos = 0
    while pos < len(by_key):
        key = _reservoir_key(configs[by_key[pos]])
        group = [i for i in by_key[pos:] if _reservoir_key(configs[i]) == key]
        pos += len(group)

        base = configs[group[0]]
        reservoir = build_reservoir(base)
        stats: dict[str, dict] = {}
        for unit in units:
            x, y = panel[unit]
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            sd = float(np.std(x))
            xz = (x - float(np.mean(x))) / (sd if sd > 0 else 1.0)
            states = run_states(reservoir, base, xz)[base.washout:]
            yw = y[base.washout:]
            stats[unit] = {
                "states": states,
                "y": yw,
                "gram": states.T @ states,
                "xty": states.T @ yw,
                "colsum": states.sum(axis=0),
                "n": len(yw),
                "ysum": float(yw.sum()),
                "y2sum": float((yw * yw).sum()),
            }

        for ci in group:
            cfg = configs[ci]
            fold_scores: list[float] = []
            reason = None
            for held in units:
                others = [u for u in units if u != held]
                n = sum(stats[u]["n"] for u in others)
                ysum = sum(stats[u]["ysum"] for u in others)
                y2sum = sum(stats[u]["y2sum"] for u in others)
                mu = ysum / n
                var = y2sum / n - mu * mu
                if var <= 0:
                    reason = f"fold {held}: constant pooled training target"
                    break
                sigma = math.sqrt(var)
                gram = sum(stats[u]["gram"] for u in others) + cfg.ridge * np.eye(cfg.size)
                rhs = sum((stats[u]["xty"] - mu * stats[u]["colsum"]) for u in others) / sigma
                try:
                    w = _solve_ridge(gram, rhs, cfg.ridge)
                    pred = stats[held]["states"] @ w * sigma + mu
                    fold_scores.append(nrmse(pred, stats[held]["y"]))
                except ValueError as exc:
                    reason = f"fold {held}: {exc}"
                    break
            if reason is not None:
                invalid[ci] = reason
                log.warning("config %d invalid: %s", ci, reason)
            else:
                scores[ci] = float(np.mean(fold_scores))
                for held, value in zip(units, fold_scores):
                    cells.append(CvCell(ci, held, value))

    if not scores:
        raise ValueError("every config was invalid")
    winner = min(
        scores,
        key=lambda i: (scores[i], configs[i].size, configs[i].ridge, i),
    )
    cells.sort(key=lambda c: (c.config_index, c.unit))
    return CvReport(tuple(configs), tuple(cells), scores, invalid, winner)


# ---------------------------------------------------------------------------
# Config grids. The default grid spans the published tuning space.

_DEFAULT_AXES = {
    "spectral_radius": (0.1, 0.5, 0.9),
    "leak": (0.1, 0.5, 0.9),
    "size": (50, 150, 250),
    "sparsity": (0.1, 0.4, 0.7),
    "ridge": (0.1, 1.0, 10.0, 100.0),
    "input_scale": (0.3, 0.6, 0.9),
}

_QUICK_AXES = {
    "spectral_radius": (0.1, 0.5),
    "leak": (0.5, 0.9),
    "size": (50, 150),
    "sparsity": (0.1,),
    "ridge": (0.1, 10.0),
    "input_scale": (0.9,),
}


def _grid_from_axes(axes: Mapping[str, tuple], seed: int, washout: int) -> list[ReservoirConfig]:
    names = list(axes)
    out = []
    for combo in itertools.product(*(axes[n] for n in names)):
        kwargs = dict(zip(names, combo))
        out.append(ReservoirConfig(seed=seed, washout=washout, **kwargs))
    return out


def make_default_grid(seed: int = 0, washout: int = 0) -> list[ReservoirConfig]:
    return _grid_from_axes(_DEFAULT_AXES, seed, washout)


def make_quick_grid(seed: int = 0, washout: int = 0) -> list[ReservoirConfig]:
    return _grid_from_axes(_QUICK_AXES, seed, washout)
