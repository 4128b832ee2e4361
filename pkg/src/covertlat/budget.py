"""Multi-shot covertness budgets and a small density-matrix oracle.

The budget arithmetic is two lines: a per-shot relative-entropy cap of
``8 * delta**2`` keeps a single shot delta-covert, and additivity over
independent shots turns that into ``delta * sqrt(k)``-covertness across
k shots.  The rest of the module is a small-dimension (d <= 8) numerical
oracle for the inequality this rests on: trace distance is bounded by a
square root of quantum relative entropy, checked here on explicit
matrices including exact tensor powers.

Relative entropy defaults to base 2 (bits); the inequality constants
carry the matching log-2 factor so both sides stay base-consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-12
SUPPORT_TOL = 1e-10
MAX_DIM = 8
LN2 = math.log(2.0)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated d x d density matrix, d <= 8."""

    matrix: tuple  # row-major tuple of tuples of complex, for hashability

    @staticmethod
    def from_array(a) -> "DensityMatrix":
        m = np.asarray(a, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        d = m.shape[0]
        if d < 1 or d > MAX_DIM:
            raise ValueError(f"dimension must be in [1, {MAX_DIM}], got {d}")
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError(f"trace must be 1, got {np.trace(m)}")
        if np.linalg.eigvalsh(m).min() < -PSD_TOL:
            raise ValueError("matrix is not positive semidefinite")
        return DensityMatrix(tuple(tuple(row) for row in m))

    @staticmethod
    def from_json_obj(rows) -> "DensityMatrix":
        m = [[complex(re, im) for re, im in row] for row in rows]
        return DensityMatrix.from_array(m)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def to_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=complex)

    def to_json_obj(self) -> list:
        return [[[z.real, z.imag] for z in row] for row in self.matrix]


def pure_state(amplitudes) -> DensityMatrix:
    v = np.asarray(amplitudes, dtype=complex)
    v = v / np.linalg.norm(v)
    return DensityMatrix.from_array(np.outer(v, v.conj()))


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix.from_array(np.eye(d) / d)


def random_density_matrix(d: int, rng: np.random.Generator) -> DensityMatrix:
    """Full-rank random state: normalized A @ A^dagger with Gaussian A."""
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = a @ a.conj().T
    return DensityMatrix.from_array(m / np.trace(m).real)


def _check_dims(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half the trace norm of the difference; in [0, 1]."""
    _check_dims(rho, sigma)
    eig = np.linalg.eigvalsh(rho.to_array() - sigma.to_array())
    return float(0.5 * np.abs(eig).sum())


def quantum_relative_entropy(
    rho: DensityMatrix, sigma: DensityMatrix, base: float = 2.0
) -> float:
    """Tr[rho (log rho - log sigma)], or +inf outside sigma's support."""
    _check_dims(rho, sigma)
    p, u = np.linalg.eigh(rho.to_array())
    q, v = np.linalg.eigh(sigma.to_array())
    p = np.clip(p, 0.0, None)
    q = np.clip(q, 0.0, None)

    # Support condition: rho must have no weight on sigma's null space.
    null = v[:, q < SUPPORT_TOL]
    if null.shape[1] and float(
        np.real(np.einsum("ij,jk,ki->", null.conj().T, rho.to_array(), null))
    ) > SUPPORT_TOL:
        return math.inf

    ent = float(sum(x * math.log(x) for x in p if x > 0.0))
    overlap = np.abs(u.conj().T @ v) ** 2  # overlap[i, j] = |<u_i|v_j>|^2
    cross = 0.0
    for i, pi in enumerate(p):
        if pi <= 0.0:
            continue
        for j, qj in enumerate(q):
            w = overlap[i, j]
            if w < 1e-16:
                continue
            if qj < SUPPORT_TOL:
                continue  # weight below SUPPORT_TOL already ruled out above
            cross += pi * w * math.log(qj)
    return (ent - cross) / math.log(base)


@dataclass(frozen=True)
class PinskerReport:
    lhs: float
    rhs: float
    holds: bool
    qre_infinite: bool = False


def pinsker_check(rho: DensityMatrix, sigma: DensityMatrix) -> PinskerReport:
    """Verify trace distance <= sqrt(QRE * ln2 / 2) on one state pair."""
    lhs = trace_distance(rho, sigma)
    qre = quantum_relative_entropy(rho, sigma)
    if math.isinf(qre):
        return PinskerReport(lhs=lhs, rhs=math.inf, holds=True, qre_infinite=True)
    rhs = math.sqrt(qre * LN2 / 2.0)
    return PinskerReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-9)


def product_pinsker_demo(
    rho: DensityMatrix, sigma: DensityMatrix, k: int
) -> PinskerReport:
    """Exact k-fold tensor-power distinguishability against its budget.

    Computes ``(1/4) * || rho^(x)k - sigma^(x)k ||_1`` by explicit
    eigendecomposition (dimension capped at 64) and compares it with
    ``sqrt(k * QRE * ln2 / 8)``, the bound whose k-linearity comes from
    additivity of relative entropy over product states.
    """
    _check_dims(rho, sigma)
    if k < 1:
        raise ValueError("k must be >= 1")
    if rho.dim ** k > 64:
        raise ValueError(f"tensor power dimension {rho.dim ** k} exceeds 64")
    rk = rho.to_array()
    sk = sigma.to_array()
    for _ in range(k - 1):
        rk = np.kron(rk, rho.to_array())
        sk = np.kron(sk, sigma.to_array())
    eig = np.linalg.eigvalsh(rk - sk)
    lhs = float(0.25 * np.abs(eig).sum())
    qre = quantum_relative_entropy(rho, sigma)
    if math.isinf(qre):
        return PinskerReport(lhs=lhs, rhs=math.inf, holds=True, qre_infinite=True)
    rhs = math.sqrt(k * qre * LN2 / 8.0)
    return PinskerReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-9)


@dataclass(frozen=True)
class CovertBudget:
    """Per-shot covertness level and its k-shot consequences."""

    delta: float
    k: int
    delta_qre: float
    k_shot_bound: float

    @property
    def missed_detection_exponent_scale(self) -> float:
        # Asymptotically the adversary's missed-detection probability can
        # decay no faster than exp(-k * QRE); this is that scale under the
        # per-shot cap.
        return self.k * self.delta_qre

    def to_json_obj(self) -> dict:
        return {
            "delta": self.delta,
            "k": self.k,
            "delta_qre": self.delta_qre,
            "k_shot_bound": self.k_shot_bound,
            "missed_detection_exponent_scale": self.missed_detection_exponent_scale,
        }


def k_shot_budget(delta: float, k: int) -> CovertBudget:
    """Budget for k independent shots at per-shot covertness ``delta``."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if k < 1:
        raise ValueError("k must be >= 1")
    return CovertBudget(
        delta=delta,
        k=k,
        delta_qre=8.0 * delta * delta,
        k_shot_bound=delta * math.sqrt(k),
    )


def max_shots(delta: float, target: float) -> int | None:
    """Largest k with delta * sqrt(k) <= target; None when unbounded."""
    if delta < 0 or target < 0:
        raise ValueError("delta and target must be nonnegative")
    if delta == 0.0:
        return None
    return math.floor((target / delta) ** 2)
