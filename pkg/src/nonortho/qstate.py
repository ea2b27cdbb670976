"""Qubit state and density-matrix kernel.

Amplitude convention: index 0 carries the up basis state, index 1 the down
basis state. All types are immutable values and all operations are pure
functions, so everything here is safe to share across workers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

# Constructors repair norm deviations up to RENORM_LIMIT and reject beyond;
# after construction all norms and orthogonality checks hold to ATOL.
RENORM_LIMIT = 1e-9
ATOL = 1e-12


class ValidationError(ValueError):
    """A state, basis, or matrix failed its construction invariants."""


class DomainError(ValueError):
    """A parameter lies outside the documented domain of an operation."""


class InvariantError(RuntimeError):
    """Two redundant internal computations disagreed."""


def _require_finite(*values: complex) -> None:
    for v in values:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValidationError("amplitudes must be finite")


@dataclass(frozen=True)
class PureState2:
    """Normalized two-component complex state vector (a qubit ket).

    Construction renormalizes inputs whose squared norm deviates from 1 by
    at most RENORM_LIMIT and rejects anything further off.
    """

    a_up: complex
    a_down: complex

    def __post_init__(self):
        up = complex(self.a_up)
        down = complex(self.a_down)
        _require_finite(up, down)
        norm_sq = abs(up) ** 2 + abs(down) ** 2
        if abs(norm_sq - 1.0) > RENORM_LIMIT:
            raise ValidationError(
                f"state norm too far from 1: |psi|^2 = {norm_sq!r}")
        norm = math.sqrt(norm_sq)
        object.__setattr__(self, "a_up", up / norm)
        object.__setattr__(self, "a_down", down / norm)

    def vector(self) -> np.ndarray:
        return np.array([self.a_up, self.a_down], dtype=complex)


KET_UP = PureState2(1.0, 0.0)
KET_DOWN = PureState2(0.0, 1.0)


def inner(x: PureState2, y: PureState2) -> complex:
    """Hermitian inner product <x|y>."""
    return x.a_up.conjugate() * y.a_up + x.a_down.conjugate() * y.a_down


def overlap2(x: PureState2, y: PureState2) -> float:
    """Squared overlap |<y|x>|^2, symmetric and phase invariant, in [0, 1]."""
    value = abs(inner(y, x)) ** 2
    return min(max(value, 0.0), 1.0)


def from_bloch(theta: float, phi: float) -> PureState2:
    """State at polar angle theta and azimuth phi on the Bloch sphere."""
    half = 0.5 * theta
    return PureState2(math.cos(half), cmath.exp(1j * phi) * math.sin(half))


def orthogonal_complement(x: PureState2) -> PureState2:
    """The unique (up to phase) state orthogonal to x."""
    return PureState2(-x.a_down.conjugate(), x.a_up.conjugate())


def projector(x: PureState2) -> np.ndarray:
    """Rank-1 projector |x><x| as a 2x2 complex array."""
    v = x.vector()
    return np.outer(v, v.conj())


@dataclass(frozen=True)
class DiagonalDensity:
    """Diagonal qubit density matrix diag(p, 1-p) with the convention p >= 1/2.

    Callers holding a general density matrix diagonalize first and relabel
    eigenvectors so the larger eigenvalue sits on the up state.
    """

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not (0.5 - ATOL <= p <= 1.0 + ATOL):
            raise DomainError(f"p must lie in [1/2, 1], got {p!r}")
        object.__setattr__(self, "p", min(max(p, 0.5), 1.0))

    def eigenvalues(self) -> tuple[float, float]:
        return (self.p, 1.0 - self.p)

    def matrix(self) -> np.ndarray:
        return np.diag([complex(self.p), complex(1.0 - self.p)])


def density_from_p(p: float) -> DiagonalDensity:
    """Construct diag(p, 1-p); rejects p outside [1/2, 1]."""
    return DiagonalDensity(p)


@dataclass(frozen=True, eq=False)
class Density2:
    """General 2x2 density matrix: Hermitian, unit trace, PSD within ATOL."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValidationError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
            raise ValidationError("matrix entries must be finite")
        if np.max(np.abs(m - m.conj().T)) > ATOL:
            raise ValidationError("matrix is not Hermitian within tolerance")
        if abs(m.trace() - 1.0) > ATOL:
            raise ValidationError(f"trace must be 1, got {m.trace()!r}")
        eigs = np.linalg.eigvalsh(m)
        if eigs[0] < -ATOL or eigs[-1] > 1.0 + ATOL:
            raise ValidationError(f"eigenvalues outside [0, 1]: {eigs}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True)
class Basis2:
    """Orthonormal qubit measurement basis (b0, b1)."""

    b0: PureState2
    b1: PureState2

    def __post_init__(self):
        if abs(inner(self.b0, self.b1)) > ATOL:
            raise ValidationError("basis states are not orthogonal")


def basis_from_state(x: PureState2) -> Basis2:
    """Basis whose first element is x."""
    return Basis2(x, orthogonal_complement(x))


def measure_in_basis(x: PureState2, b: Basis2) -> tuple[float, float]:
    """Outcome probabilities of projectively measuring x in basis b."""
    return (overlap2(x, b.b0), overlap2(x, b.b1))


def parse_state_literal(text: str) -> PureState2:
    """Parse the literal "re,im;re,im" (amplitudes on up then down)."""
    parts = text.strip().split(";")
    if len(parts) != 2:
        raise ValidationError(
            f"state literal must have two ';'-separated amplitudes: {text!r}")
    amps = []
    for part in parts:
        pieces = part.split(",")
        if len(pieces) != 2:
            raise ValidationError(
                f"each amplitude must be 're,im', got {part!r}")
        try:
            amps.append(complex(float(pieces[0]), float(pieces[1])))
        except ValueError as exc:
            raise ValidationError(f"bad number in state literal: {part!r}") from exc
    return PureState2(amps[0], amps[1])


def format_state_literal(x: PureState2) -> str:
    """Render a state in the literal format with 12 significant digits."""
    return ";".join(
        f"{c.real:.12g},{c.imag:.12g}" for c in (x.a_up, x.a_down))
