"""Spectator dephasing experiments: simulation, fitting, detection.

A spectator qubit prepared in superposition and measured after a delay
tau shows oscillations in P(|0>) at its detuning; residual ZZ coupling
from two-qubit gates on nearby qubits shifts that detuning.  The
pipeline here is

    simulate -> fit -> detect -> aggregate

with shot-sampled counts from the decaying-cosine model

    p(tau) = offset + amplitude * exp(-gamma*tau) * cos(2*pi*delta*tau),

whose defaults (amplitude = offset = 1/2) give the textbook Ramsey form
(1 + exp(-tau/T2*) cos(2*pi*delta*tau)) / 2.  ``delta`` is in Hz and
``gamma = 1/T2*`` in 1/s.

Every random draw comes from a stream derived from (seed, qubit,
context, role), so distinct spectators and edge sets are independent yet
the whole experiment is reproducible bit-for-bit from one seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import least_squares

from .errors import PreconditionError
from .placement import DeviceTopology, EdgeSchedule, Placement, classify_spectators, hop_distances

DEFAULT_TAU_GRID: tuple = tuple(float(t) for t in np.linspace(0.0, 11e-6, 39))

RECORDS_CSV_HEADER = (
    "device",
    "experiment",
    "qubit",
    "edge_set",
    "nn",
    "baseline_delta_hz",
    "active_delta_hz",
    "shift_hz",
    "detected",
    "fit_ok",
)
SUMMARY_CSV_HEADER = (
    "experiment",
    "n",
    "nn_detected",
    "nn_total",
    "nonnn_detected",
    "nonnn_total",
)
TRACE_CSV_HEADER = ("qubit", "edge_set", "role", "tau_s", "p_hat", "p_fit")


@dataclass(frozen=True)
class RamseyConfig:
    tau_points: tuple = field(default=DEFAULT_TAU_GRID)
    f_osc_hz: float = 300e3
    shots: int = 1024
    seed: int = 0
    cz_gate_time_s: float = 100e-9

    def __post_init__(self):
        taus = tuple(float(t) for t in self.tau_points)
        if any(t < 0 for t in taus):
            raise ValueError("delays must be nonnegative")
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise ValueError("delays must be strictly increasing")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        object.__setattr__(self, "tau_points", taus)


@dataclass(frozen=True)
class SignalParams:
    delta_hz: float
    gamma: float
    amplitude: float = 0.5
    offset: float = 0.5

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        if self.offset - self.amplitude < -1e-9 or self.offset + self.amplitude > 1 + 1e-9:
            raise ValueError(
                "amplitude/offset must keep probabilities in [0, 1]: "
                f"amplitude={self.amplitude}, offset={self.offset}"
            )


def model_probability(params: SignalParams, tau: float) -> float:
    """P(|0>) after delay ``tau`` under the decaying-cosine model."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    value = params.offset + params.amplitude * math.exp(-params.gamma * tau) * math.cos(
        2.0 * math.pi * params.delta_hz * tau
    )
    return min(1.0, max(0.0, value))


def _model_array(x: np.ndarray, taus: np.ndarray) -> np.ndarray:
    delta, gamma, amp, off = x
    return off + amp * np.exp(-gamma * taus) * np.cos(2.0 * np.pi * delta * taus)


def _jacobian(x: np.ndarray, taus: np.ndarray) -> np.ndarray:
    delta, gamma, amp, off = x
    decay = np.exp(-gamma * taus)
    phase = 2.0 * np.pi * delta * taus
    cos_p = np.cos(phase)
    sin_p = np.sin(phase)
    return np.stack(
        [
            -amp * decay * sin_p * 2.0 * np.pi * taus,
            -taus * amp * decay * cos_p,
            decay * cos_p,
            np.ones_like(taus),
        ],
        axis=1,
    )


def _stream(seed: int, qubit: int, context: int, role: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed & 0xFFFFFFFF, qubit, context, role])
    return np.random.Generator(np.random.PCG64(ss))


def simulate(
    params: SignalParams,
    cfg: RamseyConfig,
    rng: np.random.Generator | None = None,
) -> list:
    """Shot-sampled counts of |0> per delay: binomial draws around the model."""
    if rng is None:
        rng = _stream(cfg.seed, 0, 0, 0)
    taus = np.asarray(cfg.tau_points)
    probs = np.clip(_model_array(
        np.array([params.delta_hz, params.gamma, params.amplitude, params.offset]),
        taus,
    ), 0.0, 1.0)
    counts = rng.binomial(cfg.shots, probs)
    return [(float(t), int(c)) for t, c in zip(taus, counts)]


@dataclass(frozen=True)
class FitResult:
    params: SignalParams
    converged: bool
    residual: float  # sum of squared residuals on empirical probabilities
    note: str = ""


# Fits whose oscillation amplitude lands this low cannot pin a frequency;
# they are flagged as decoherence-like rather than trusted.
AMPLITUDE_FLOOR = 0.02
_GAMMA_CAP_FACTOR = 100.0
_N_STARTS = 8


def fit(
    data: Sequence,
    cfg: RamseyConfig,
    weighted: bool = False,
) -> FitResult:
    """Least-squares fit of the decaying-cosine model to (tau, count) data.

    The frequency axis is multimodal, so the solver is restarted from a
    grid of ``delta`` values spanning [0, 2 * f_osc] and the best basin
    wins; an early exit fires once the residual reaches the shot-noise
    floor.  The result is flagged not-converged when the solver fails,
    the data are flat, the amplitude collapses below
    ``AMPLITUDE_FLOOR``, or the frequency/decay estimates sit on the
    search bounds.

    With ``weighted=True`` residuals are scaled by per-point binomial
    standard deviations instead of being left raw.
    """
    if len(data) < 5:
        raise ValueError(f"need at least 5 data points, got {len(data)}")
    taus = np.array([t for t, _ in data], dtype=float)
    p_hat = np.array([c for _, c in data], dtype=float) / cfg.shots
    if np.all(p_hat == p_hat[0]):
        params = SignalParams(0.0, 0.0, 0.0, float(p_hat[0]))
        return FitResult(params, False, 0.0, "degenerate: constant data")

    tau_max = float(taus.max())
    delta_hi = 2.0 * cfg.f_osc_hz
    gamma_hi = _GAMMA_CAP_FACTOR / tau_max
    lower = np.array([0.0, 0.0, 0.0, 0.0])
    upper = np.array([delta_hi, gamma_hi, 0.5, 1.0])

    if weighted:
        sigma = np.sqrt(np.clip(p_hat * (1.0 - p_hat), 1e-4, None) / cfg.shots)
    else:
        sigma = np.ones_like(p_hat)

    def residuals(x):
        return (_model_array(x, taus) - p_hat) / sigma

    def jac(x):
        return _jacobian(x, taus) / sigma[:, None]

    amp0 = float(np.clip((p_hat.max() - p_hat.min()) / 2.0, 0.05, 0.5))
    off0 = float(np.clip(p_hat.mean(), 0.05, 0.95))
    gamma0 = 1.0 / tau_max
    noise_floor = len(taus) * 3.0 * 0.25 / cfg.shots

    best = None
    for delta0 in np.linspace(0.0, delta_hi, _N_STARTS):
        x0 = np.clip(
            np.array([delta0, gamma0, amp0, off0]), lower + 1e-12, upper - 1e-12
        )
        sol = least_squares(
            residuals, x0, jac=jac, bounds=(lower, upper), method="trf", max_nfev=400
        )
        if best is None or sol.cost < best.cost:
            best = sol
        if best.cost * 2.0 <= noise_floor:
            break

    delta, gamma, amp, off = (float(v) for v in best.x)
    note = ""
    converged = bool(best.success)
    if not converged:
        note = "solver did not converge"
    if delta > delta_hi * (1.0 - 1e-6):
        converged = False
        note = "frequency estimate at search bound"
    if gamma > gamma_hi * (1.0 - 1e-6):
        converged = False
        note = "decay estimate at search bound"
    # Keep the reported parameters inside the probability simplex.  Shot
    # noise routinely pushes (amplitude, offset) a hair outside it, which
    # is harmless; only a gross violation marks the fit untrustworthy.
    feasible_amp = min(amp, off, 1.0 - off)
    if amp - feasible_amp > 0.05:
        converged = False
        note = "amplitude/offset far outside the probability simplex"
    amp = feasible_amp
    if amp < AMPLITUDE_FLOOR:
        converged = False
        note = "decoherence-like: amplitude below floor"
    params = SignalParams(delta, gamma, amp, off)
    ssr = float(np.sum(((_model_array(best.x, taus) - p_hat)) ** 2))
    return FitResult(params, converged, ssr, note)


def detect(baseline: FitResult, active: FitResult, threshold_hz: float) -> tuple:
    """Frequency shift and threshold verdict for one baseline/active pair.

    Detection is strict: a shift exactly at the threshold is not
    flagged.  Both fits must have converged; records built from failed
    fits are excluded upstream instead of being compared.
    """
    if not (baseline.converged and active.converged):
        raise PreconditionError("detect() requires two converged fits")
    shift = active.params.delta_hz - baseline.params.delta_hz
    return shift, abs(shift) > threshold_hz


def calibrate_threshold(baseline_pairs: Sequence) -> float:
    """Twice the population standard deviation of baseline-to-baseline shifts."""
    if len(baseline_pairs) < 2:
        raise ValueError("need at least 2 baseline pairs to calibrate")
    shifts = np.array(
        [b.params.delta_hz - a.params.delta_hz for a, b in baseline_pairs]
    )
    return float(2.0 * shifts.std(ddof=0))


@dataclass(frozen=True)
class HopDecayCrosstalk:
    """Injected detuning shift by coupler-graph hop distance.

    Nearest neighbors of an active edge see ``zeta_nn_hz``; a spectator
    ``d >= 2`` hops away sees ``zeta_lr_hz * lr_decay**(d - 2)``.  This
    is a simulation stand-in for exploring long-range side channels, not
    a physical model.
    """

    zeta_nn_hz: float
    zeta_lr_hz: float = 0.0
    lr_decay: float = 0.5

    def __call__(self, device: DeviceTopology, qubit: int, active_edges) -> float:
        endpoints = {q for e in active_edges for q in e}
        if not endpoints:
            return 0.0
        dist = hop_distances(device, endpoints).get(qubit)
        if dist is None or dist == 0:
            return 0.0
        if dist == 1:
            return self.zeta_nn_hz
        return self.zeta_lr_hz * self.lr_decay ** (dist - 2)


@dataclass(frozen=True)
class RamseyRecord:
    qubit_id: int
    edge_set_index: int
    baseline_delta_hz: float
    active_delta_hz: float
    shift_hz: float
    detected: bool
    nn: str  # "nn" or "non_nn"
    fit_ok: bool
    cz_count: int


@dataclass(frozen=True)
class SummaryRow:
    experiment: str
    n: int
    nn_detected: int
    nn_total: int
    nonnn_detected: int
    nonnn_total: int


@dataclass(frozen=True)
class ExperimentResult:
    device_name: str
    experiment: str
    n: int
    threshold_hz: float
    records: tuple
    summary: SummaryRow
    traces: tuple = ()

    def records_csv_rows(self) -> list:
        return [
            (
                self.device_name,
                self.experiment,
                r.qubit_id,
                r.edge_set_index,
                r.nn,
                repr(r.baseline_delta_hz),
                repr(r.active_delta_hz),
                repr(r.shift_hz),
                str(r.detected).lower(),
                str(r.fit_ok).lower(),
            )
            for r in self.records
        ]

    def summary_csv_rows(self) -> list:
        s = self.summary
        return [
            (s.experiment, s.n, s.nn_detected, s.nn_total, s.nonnn_detected, s.nonnn_total)
        ]

    def traces_csv_rows(self) -> list:
        return [
            (q, e, role, repr(t), repr(p), repr(pf))
            for (q, e, role, t, p, pf) in self.traces
        ]


def _fit_run(
    cfg: RamseyConfig,
    qubit: int,
    context: int,
    role: int,
    delta_hz: float,
    gamma: float,
) -> tuple:
    truth = SignalParams(delta_hz=delta_hz, gamma=gamma)
    data = simulate(truth, cfg, rng=_stream(cfg.seed, qubit, context, role))
    return data, fit(data, cfg)


def run_experiment(
    device: DeviceTopology,
    placement: Placement,
    schedule: EdgeSchedule,
    crosstalk: Callable,
    cfg: RamseyConfig,
    gamma: float = 1.0 / 20e-6,
    threshold_hz: float | None = None,
    label: str | None = None,
    collect_traces: bool = False,
) -> ExperimentResult:
    """Simulate the full spectator sweep for one placement.

    Every spectator gets two baseline runs (used for threshold
    calibration when ``threshold_hz`` is not supplied) plus one run per
    edge set with the crosstalk model's shift injected into its
    detuning.  Records carry the per-edge-set nearest-neighbor label and
    only fit-ok records enter the detection summary.
    """
    label = label or f"{device.name}-n{placement.n}"
    spectators = sorted(placement.buffer | placement.willie)
    f_osc = cfg.f_osc_hz
    cz_count = int(max(cfg.tau_points) / cfg.cz_gate_time_s)

    baselines: dict = {}
    traces: list = []
    pairs = []
    for q in spectators:
        data0, fit0 = _fit_run(cfg, q, 0, 0, f_osc, gamma)
        data1, fit1 = _fit_run(cfg, q, 0, 1, f_osc, gamma)
        baselines[q] = fit0
        if fit0.converged and fit1.converged:
            pairs.append((fit0, fit1))
        if collect_traces:
            for role, data, fr in ((0, data0, fit0), (1, data1, fit1)):
                for t, c in data:
                    traces.append(
                        (q, -1, f"baseline{role}", t, c / cfg.shots,
                         model_probability(fr.params, t))
                    )

    if threshold_hz is None:
        threshold_hz = calibrate_threshold(pairs)

    records = []
    for e in range(len(schedule.edge_sets)):
        labels = classify_spectators(device, placement, schedule, e)
        active_edges = schedule.edge_sets[e]
        for q in spectators:
            injected = crosstalk(device, q, active_edges)
            data_a, fit_a = _fit_run(cfg, q, 1 + e, 2, f_osc + injected, gamma)
            fit_b = baselines[q]
            ok = fit_b.converged and fit_a.converged
            if ok:
                shift, det = detect(fit_b, fit_a, threshold_hz)
            else:
                shift = fit_a.params.delta_hz - fit_b.params.delta_hz
                det = False
            records.append(
                RamseyRecord(
                    qubit_id=q,
                    edge_set_index=e,
                    baseline_delta_hz=fit_b.params.delta_hz,
                    active_delta_hz=fit_a.params.delta_hz,
                    shift_hz=shift,
                    detected=det,
                    nn=labels[q],
                    fit_ok=ok,
                    cz_count=cz_count,
                )
            )
            if collect_traces:
                for t, c in data_a:
                    traces.append(
                        (q, e, "active", t, c / cfg.shots,
                         model_probability(fit_a.params, t))
                    )

    usable = [r for r in records if r.fit_ok]
    summary = SummaryRow(
        experiment=label,
        n=placement.n,
        nn_detected=sum(1 for r in usable if r.nn == "nn" and r.detected),
        nn_total=sum(1 for r in usable if r.nn == "nn"),
        nonnn_detected=sum(1 for r in usable if r.nn == "non_nn" and r.detected),
        nonnn_total=sum(1 for r in usable if r.nn == "non_nn"),
    )
    return ExperimentResult(
        device_name=device.name,
        experiment=label,
        n=placement.n,
        threshold_hz=threshold_hz,
        records=tuple(records),
        summary=summary,
        traces=tuple(traces),
    )
