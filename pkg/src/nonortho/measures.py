"""Nonorthogonality measures for pure-state pairs.

Three measures are provided: a linear one (zero for identical or orthogonal
pairs, one at squared overlap 1/2), an entropic one, and a searched one (the
least total measurement entropy any single basis can extract from the pair).
The bipartite entropy machinery used to mirror the searched measure against
entanglement lives here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qstate import (
    ATOL,
    RENORM_LIMIT,
    Basis2,
    DomainError,
    PureState2,
    ValidationError,
    basis_from_state,
    from_bloch,
    measure_in_basis,
    overlap2,
)

TWO_PI = 2.0 * math.pi


def binary_entropy(x: float) -> float:
    """Entropy in bits of an (x, 1-x) outcome pair, with 0 log 0 = 0."""
    if x < -ATOL or x > 1.0 + ATOL:
        raise DomainError(f"binary_entropy argument outside [0, 1]: {x!r}")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


def binary_entropy_array(x: np.ndarray) -> np.ndarray:
    """Vectorized binary_entropy; entries are clipped into [0, 1]."""
    x = np.clip(x, 0.0, 1.0)
    out = np.zeros_like(x)
    mask = (x > 0.0) & (x < 1.0)
    xm = x[mask]
    out[mask] = -(xm * np.log2(xm) + (1.0 - xm) * np.log2(1.0 - xm))
    return out


def n0(psi1: PureState2, psi2: PureState2) -> float:
    """Linear nonorthogonality: 1 - 2 * |overlap^2 - 1/2|.

    Twice the probability of misidentifying one state when measuring in a
    basis aligned with the other.
    """
    return 1.0 - 2.0 * abs(overlap2(psi1, psi2) - 0.5)


def n1(psi1: PureState2, psi2: PureState2) -> float:
    """Entropic nonorthogonality: binary entropy of the squared overlap."""
    return binary_entropy(overlap2(psi1, psi2))


def selective_info(x: PureState2, b: Basis2) -> float:
    """Bits of genuinely new data generated by measuring x in basis b."""
    p0, _ = measure_in_basis(x, b)
    return binary_entropy(p0)


@dataclass(frozen=True)
class N2SearchConfig:
    """Grid-plus-refinement search settings for the minimized measure.

    The coarse stage scans theta in [0, pi] and phi in [0, 2 pi); the
    refinement stage is a coordinate pattern search with step halving.
    """

    theta_steps: int = 256
    phi_steps: int = 256
    refine_iters: int = 40
    tol: float = 1e-10

    def __post_init__(self):
        if self.theta_steps < 64 or self.phi_steps < 64:
            raise ValidationError("search needs at least 64 steps per angle")
        if self.refine_iters < 0:
            raise ValidationError("refine_iters must be nonnegative")
        if self.tol <= 0.0:
            raise ValidationError("tol must be positive")


@dataclass(frozen=True)
class N2Result:
    """Best value found for the minimized measure and where it was found."""

    value: float
    theta: float
    phi: float
    converged: bool


def _objective_grid(psi1: PureState2, psi2: PureState2,
                    theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Total selective information on a (theta, phi) mesh of bases."""
    half = 0.5 * theta[:, None]
    c = np.cos(half)
    s = np.sin(half)
    phase = np.exp(-1j * phi[None, :])
    total = np.zeros((theta.size, phi.size))
    for psi in (psi1, psi2):
        amp = c * psi.a_up + phase * (s * psi.a_down)
        total += binary_entropy_array(np.abs(amp) ** 2)
    return total


def _objective_at(psi1: PureState2, psi2: PureState2,
                  theta: float, phi: float) -> float:
    b = basis_from_state(from_bloch(theta, phi))
    return selective_info(psi1, b) + selective_info(psi2, b)


def n2(psi1: PureState2, psi2: PureState2,
       cfg: N2SearchConfig | None = None) -> N2Result:
    """Least total selective information over all single measurement bases.

    Dense grid scan followed by local pattern-search refinement. Ties in the
    grid scan resolve to the smallest (theta, phi) pair. When the final
    refinement round still improves the objective by more than cfg.tol the
    result is flagged unconverged but the best value found is returned.
    """
    cfg = cfg or N2SearchConfig()
    theta = np.linspace(0.0, math.pi, cfg.theta_steps)
    phi = np.linspace(0.0, TWO_PI, cfg.phi_steps, endpoint=False)
    grid = _objective_grid(psi1, psi2, theta, phi)
    flat = int(np.argmin(grid))
    ti, pi_idx = divmod(flat, cfg.phi_steps)
    best_t = float(theta[ti])
    best_p = float(phi[pi_idx])
    best = float(grid[ti, pi_idx])

    step_t = float(theta[1] - theta[0])
    step_p = float(phi[1] - phi[0])
    last_gain = math.inf if cfg.refine_iters else 0.0
    for _ in range(cfg.refine_iters):
        candidates = (
            (min(best_t + step_t, math.pi), best_p),
            (max(best_t - step_t, 0.0), best_p),
            (best_t, (best_p + step_p) % TWO_PI),
            (best_t, (best_p - step_p) % TWO_PI),
        )
        values = [_objective_at(psi1, psi2, t, p) for t, p in candidates]
        idx = int(np.argmin(values))
        if values[idx] < best:
            last_gain = best - values[idx]
            best = values[idx]
            best_t, best_p = candidates[idx]
        else:
            last_gain = 0.0
            step_t *= 0.5
            step_p *= 0.5
    return N2Result(value=best, theta=best_t, phi=best_p,
                    converged=last_gain <= cfg.tol)


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Pure bipartite state given by its amplitude matrix A[i, j] = <i, j|psi>."""

    amps: np.ndarray

    def __post_init__(self):
        a = np.array(self.amps, dtype=complex)
        if a.ndim != 2 or a.size == 0:
            raise ValidationError("amplitude matrix must be 2-dimensional")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise ValidationError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(a) ** 2))
        if abs(norm_sq - 1.0) > RENORM_LIMIT:
            raise ValidationError(
                f"amplitude matrix norm too far from 1: {norm_sq!r}")
        a = a / math.sqrt(norm_sq)
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)


def schmidt_xi(state: BipartiteState) -> float:
    """Entanglement entropy in ebits from the amplitude-matrix singular values."""
    sv = np.linalg.svd(state.amps, compute_uv=False)
    lam = np.clip(sv ** 2, 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(-(lam * np.log2(lam)).sum())


def schmidt_basis(state: BipartiteState) -> Basis2:
    """Left biorthogonal basis of a state whose first subsystem is a qubit."""
    if state.amps.shape[0] != 2:
        raise DomainError("first subsystem must be two-dimensional")
    u, _, _ = np.linalg.svd(state.amps)
    return Basis2(PureState2(u[0, 0], u[1, 0]), PureState2(u[0, 1], u[1, 1]))


def local_measurement_entropy(state: BipartiteState, b: Basis2) -> float:
    """Outcome entropy of measuring the first subsystem in basis b.

    Minimized exactly when b is the biorthogonal basis, where it equals
    schmidt_xi; every other basis generates strictly more new data.
    """
    if state.amps.shape[0] != 2:
        raise DomainError("first subsystem must be two-dimensional")
    rho1 = state.amps @ state.amps.conj().T
    v0 = b.b0.vector()
    p0 = float(np.real(v0.conj() @ rho1 @ v0))
    return binary_entropy(min(max(p0, 0.0), 1.0))
