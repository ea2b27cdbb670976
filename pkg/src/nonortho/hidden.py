"""Two-state nonorthogonal decompositions of a diagonal qubit density matrix.

diag(p, 1-p) with p >= 1/2 admits a two-parameter family of decompositions
z |phi1><phi1| + (1-z) |phi2><phi2| into generally nonorthogonal states,
indexed by a complex pair (alpha, beta) on the unit sphere. This module
builds those decompositions and computes their pair and ensemble
nonorthogonality together with the extremal structure in closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .qstate import (
    ATOL,
    RENORM_LIMIT,
    Density2,
    DiagonalDensity,
    DomainError,
    InvariantError,
    PureState2,
    ValidationError,
    projector,
)

# The only p whose decompositions reach a 50/50 split of maximally
# nonorthogonal states: p (1-p) = 1/8.
IDEAL_P = 0.5 * (1.0 + math.sqrt(0.5))


class DegenerateDecompositionError(DomainError):
    """The requested decomposition collapses to a single state."""


def _check_p(p: float) -> float:
    if not (0.5 - ATOL <= p <= 1.0 + ATOL):
        raise DomainError(f"p must lie in [1/2, 1], got {p!r}")
    return min(max(p, 0.5), 1.0)


def _check_pz(p: float, z: float) -> tuple[float, float]:
    p = _check_p(p)
    if not (0.5 - ATOL <= z <= p + ATOL):
        raise DomainError(f"z must lie in [1/2, p] = [0.5, {p}], got {z!r}")
    return p, min(max(z, 0.5), p)


@dataclass(frozen=True)
class DecompositionParams:
    """Complex pair (alpha, beta) with |alpha|^2 + |beta|^2 = 1.

    The canonical cell has |alpha|^2 >= 1/2; inputs outside it are rejected
    rather than silently relabeled, since relabeling flips sign conventions
    in the second decomposition state.
    """

    alpha: complex
    beta: complex

    def __post_init__(self):
        a = complex(self.alpha)
        b = complex(self.beta)
        for v in (a, b):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValidationError("parameters must be finite")
        norm_sq = abs(a) ** 2 + abs(b) ** 2
        if abs(norm_sq - 1.0) > RENORM_LIMIT:
            raise ValidationError(
                f"|alpha|^2 + |beta|^2 must be 1, got {norm_sq!r}")
        norm = math.sqrt(norm_sq)
        a /= norm
        b /= norm
        if abs(a) ** 2 < 0.5 - ATOL:
            raise DomainError(
                "canonical range requires |alpha|^2 >= 1/2; swap alpha and beta")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def alpha_sq(self) -> float:
        return min(abs(self.alpha) ** 2, 1.0)

    @classmethod
    def from_weights(cls, alpha_sq: float, alpha_phase: float = 0.0,
                     beta_phase: float = 0.0) -> "DecompositionParams":
        if not (0.5 - ATOL <= alpha_sq <= 1.0 + ATOL):
            raise DomainError(
                f"alpha_sq must lie in [1/2, 1], got {alpha_sq!r}")
        alpha_sq = min(max(alpha_sq, 0.5), 1.0)
        return cls(cmath.rect(math.sqrt(alpha_sq), alpha_phase),
                   cmath.rect(math.sqrt(1.0 - alpha_sq), beta_phase))


@dataclass(frozen=True)
class Decomposition:
    """A realized decomposition of diag(p, 1-p) with weight z on phi1."""

    z: float
    phi1: PureState2
    phi2: PureState2
    source_p: float

    def density(self) -> Density2:
        """Reassemble the mixture; reconstructs diag(p, 1-p)."""
        m = self.z * projector(self.phi1) + (1.0 - self.z) * projector(self.phi2)
        return Density2(m)


def z_of_alpha(p: float, alpha_sq: float) -> float:
    """Mixture weight induced by |alpha|^2: 2 p |a|^2 + 1 - p - |a|^2.

    Maps [1/2, 1] onto [1/2, p] monotonically, which is why the unlocking
    cost can never drop below the orthogonal labeling cost.
    """
    p = _check_p(p)
    if not (0.5 - ATOL <= alpha_sq <= 1.0 + ATOL):
        raise DomainError(f"alpha_sq must lie in [1/2, 1], got {alpha_sq!r}")
    alpha_sq = min(max(alpha_sq, 0.5), 1.0)
    return 2.0 * p * alpha_sq + 1.0 - p - alpha_sq


def decompose(p: float, params: DecompositionParams) -> Decomposition:
    """Build the two-state decomposition of diag(p, 1-p) for (alpha, beta).

    A pure state (p = 1) has only the trivial decomposition, so it is
    accepted only with |alpha|^2 = 1; the weight-0 partner state returned
    there is the orthogonal complement, the continuous limit of the family.
    """
    p = _check_p(p)
    a_sq = params.alpha_sq
    if p == 1.0:
        if a_sq < 1.0 - ATOL:
            raise DegenerateDecompositionError(
                "p = 1 decomposes only with |alpha|^2 = 1")
        phi1 = PureState2(params.alpha, 0.0)
        phi2 = PureState2(0.0, -params.alpha.conjugate())
        return Decomposition(z=1.0, phi1=phi1, phi2=phi2, source_p=p)
    z = z_of_alpha(p, a_sq)
    sp = math.sqrt(p)
    sq = math.sqrt(1.0 - p)
    rz = math.sqrt(z)
    rw = math.sqrt(1.0 - z)
    phi1 = PureState2(sp * params.alpha / rz,
                      sq * params.beta.conjugate() / rz)
    phi2 = PureState2(sp * params.beta / rw,
                      -sq * params.alpha.conjugate() / rw)
    return Decomposition(z=z, phi1=phi1, phi2=phi2, source_p=p)


def hidden_overlap(p: float, z: float) -> float:
    """Squared overlap of the two preparation states: 1 - p(1-p) / (z(1-z))."""
    p, z = _check_pz(p, z)
    denom = z * (1.0 - z)
    if denom == 0.0:
        # z = 1 forces p = 1, where the weight-0 partner is orthogonal.
        return 0.0
    q = p * (1.0 - p) / denom
    return min(max(1.0 - q, 0.0), 1.0)


def pair_nonortho(p: float, z: float) -> float:
    """Linear nonorthogonality of the decomposition pair at weight z."""
    p, z = _check_pz(p, z)
    denom = z * (1.0 - z)
    if denom == 0.0:
        return 0.0
    q = p * (1.0 - p) / denom
    return min(max(1.0 - 2.0 * abs(0.5 - q), 0.0), 1.0)


def ensemble_nonortho(p: float, z: float) -> float:
    """Average nonorthogonality per pair of systems across the ensemble.

    Only a fraction 2 min(z, 1-z) of the systems can be paired off into
    distinct states, so the pair value is discounted by that factor. The
    value is evaluated both that way and through the closed-form branch
    split on the squared overlap; disagreement beyond ATOL is an internal
    error.
    """
    p, z = _check_pz(p, z)
    direct = 2.0 * min(z, 1.0 - z) * pair_nonortho(p, z)
    if hidden_overlap(p, z) < 0.5:
        branch = 4.0 * (1.0 - z) - 4.0 * p * (1.0 - p) / z
    else:
        branch = 4.0 * p * (1.0 - p) / z
    if abs(direct - branch) > ATOL:
        raise InvariantError(
            f"ensemble routes disagree at p={p}, z={z}: {direct} vs {branch}")
    return direct


def max_pair_z(p: float) -> float | None:
    """Weight giving a maximally nonorthogonal pair, or None when impossible.

    Solves z(1-z) = 2 p (1-p) on [1/2, 1]; real only when p(1-p) <= 1/8.
    At p = 1 the returned root is the formal boundary solution z = 1, where
    the family degenerates to a single state and the realized pair value
    is 0.
    """
    p = _check_p(p)
    disc = 1.0 - 8.0 * p * (1.0 - p)
    if disc < -ATOL:
        return None
    return 0.5 * (1.0 + math.sqrt(max(disc, 0.0)))


def max_ensemble(p: float) -> float:
    """Largest ensemble nonorthogonality any decomposition of p attains.

    Always attained at z = 1/2: 2 - 8 p (1-p) while the overlap there stays
    below 1/2, and 8 p (1-p) once it reaches 1/2. Both branches peak at 1
    for p with p(1-p) = 1/8.
    """
    p = _check_p(p)
    pq = p * (1.0 - p)
    if pq > 0.125:
        return 2.0 - 8.0 * pq
    return 8.0 * pq


def max_ensemble_branch(p: float) -> str:
    """Which closed form attains the ensemble maximum at z = 1/2."""
    p = _check_p(p)
    return "overlap_lt_half" if p * (1.0 - p) > 0.125 else "overlap_ge_half"


def ideal_rho() -> DiagonalDensity:
    """The unique density matrix admitting a 50/50 maximally nonorthogonal mix."""
    return DiagonalDensity(IDEAL_P)
