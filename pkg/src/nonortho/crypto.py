"""Intercept-resend eavesdropping on two key-distribution schemes.

The four-state scheme uses two orthogonal signal pairs whose inter-pair
squared overlap s is arbitrary in (0, 1); the two-state scheme sends one of
two nonorthogonal states and tests with the complement projectors. Both are
provided with closed-form single-transmission detection probabilities, an
exact branch-enumeration oracle, and a seeded Monte Carlo engine whose
per-trial randomness is counter-derived so results never depend on how
trials are partitioned across workers.

Detection events:

* four-state: conditioned on sender and receiver using the same signal
  pair, the receiver's outcome differs from the sent state.
* two-state: conditioned on the receiver testing the projector able to
  contradict the sent bit, that projector clicks. An undisturbed channel
  never triggers either event.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .measures import n0
from .qstate import (
    KET_DOWN,
    KET_UP,
    DomainError,
    PureState2,
    ValidationError,
    orthogonal_complement,
)

# Philox blocks reserved per trial (4 doubles per block). Trial t always
# draws from blocks [2t, 2t + 2), whatever chunk it lands in.
_TRIAL_BLOCKS = 2
_TRIAL_DRAWS = 8
_CHUNK_TRIALS = 1 << 16


class EveStrategy(Enum):
    """Intercept-resend model applied to every transmission."""

    NONE = "none"
    BASIS_INTERCEPT = "basis"
    PROJECTOR_INTERCEPT = "projector"


def _check_unit_open(value: float, name: str) -> float:
    value = float(value)
    if not (0.0 < value < 1.0):
        raise DomainError(f"{name} must lie strictly between 0 and 1, got {value!r}")
    return value


@dataclass(frozen=True)
class BB84Spec:
    """Four-state scheme: two orthogonal pairs at inter-pair overlap s.

    The first pair is the computational one; the second is its rotation by
    the angle with squared cosine s. Orthogonality within each pair is exact
    by construction.
    """

    s: float

    def __post_init__(self):
        object.__setattr__(self, "s", _check_unit_open(self.s, "s"))

    @property
    def states(self) -> tuple[PureState2, PureState2, PureState2, PureState2]:
        """(alpha_up, alpha_down, beta_up, beta_down)."""
        rs = math.sqrt(self.s)
        rc = math.sqrt(1.0 - self.s)
        return (KET_UP, KET_DOWN, PureState2(rs, rc), PureState2(rc, -rs))

    def overlap_table(self) -> np.ndarray:
        """Pairwise squared overlaps in state order.

        These are the defining overlaps of the scheme, exact in s; squaring
        amplitude realizations would reintroduce rounding that the exact
        enumeration must not carry.
        """
        s = self.s
        c = 1.0 - self.s
        return np.array([
            [1.0, 0.0, s, c],
            [0.0, 1.0, c, s],
            [s, c, 1.0, 0.0],
            [c, s, 0.0, 1.0],
        ])


@dataclass(frozen=True)
class B92Spec:
    """Two-state scheme with signal states at squared overlap t.

    The receiver tests rank-1-complement projectors: the projector for bit b
    annihilates the other signal state, so a click excludes it.
    """

    t: float

    def __post_init__(self):
        object.__setattr__(self, "t", _check_unit_open(self.t, "t"))

    @property
    def states(self) -> tuple[PureState2, PureState2, PureState2, PureState2]:
        """(u0, u1, u0_perp, u1_perp)."""
        u0 = KET_UP
        u1 = PureState2(math.sqrt(self.t), math.sqrt(1.0 - self.t))
        return (u0, u1, orthogonal_complement(u0), orthogonal_complement(u1))

    def overlap_table(self) -> np.ndarray:
        """Pairwise squared overlaps in state order, exact in t."""
        t = self.t
        c = 1.0 - self.t
        return np.array([
            [1.0, t, 0.0, c],
            [t, 1.0, c, 0.0],
            [0.0, c, 1.0, t],
            [c, 0.0, t, 1.0],
        ])


def bb84_cross_nonortho(spec: BB84Spec) -> tuple[float, float, float, float]:
    """Linear nonorthogonality of the four inter-pair state combinations.

    All four are equal: the scheme's single overlap parameter fixes them.
    Order: (a_up, b_up), (a_up, b_down), (a_down, b_up), (a_down, b_down).
    """
    au, ad, bu, bd = spec.states
    return (n0(au, bu), n0(au, bd), n0(ad, bu), n0(ad, bd))


def bb84_detection_analytic(spec: BB84Spec) -> float:
    """Single-transmission detection probability (N/2)(1 - N/2) = s(1-s)."""
    au, _, bu, _ = spec.states
    nn = n0(au, bu)
    return (nn / 2.0) * (1.0 - nn / 2.0)


def b92_detection_analytic(spec: B92Spec, eve: EveStrategy) -> float:
    """Single-transmission detection probability under the given intercept.

    Basis intercept gives (N/2)(1 - N/2) = t(1-t); projector intercept
    halves it to (N/4)(1 - N/2); no eavesdropper means no disturbance and
    probability 0.
    """
    if eve is EveStrategy.NONE:
        return 0.0
    u0, u1 = spec.states[:2]
    nn = n0(u0, u1)
    if eve is EveStrategy.BASIS_INTERCEPT:
        return (nn / 2.0) * (1.0 - nn / 2.0)
    return (nn / 4.0) * (1.0 - nn / 2.0)


def _eve_branches_bb84(eve: EveStrategy, sent: int, ov: np.ndarray):
    """Yield (resent index, arrival probability, dyadic branch weight)."""
    if eve is EveStrategy.NONE:
        yield sent, 1.0, 1.0
        return
    if eve is not EveStrategy.PROJECTOR_INTERCEPT:
        for eve_basis in (0, 1):
            for outcome in (0, 1):
                idx = 2 * eve_basis + outcome
                yield idx, float(ov[idx, sent]), 0.5
        return
    raise DomainError(
        "the four-state scheme supports only 'none' and 'basis' eavesdroppers")


def _enumerate_bb84(spec: BB84Spec, eve: EveStrategy) -> float:
    ov = spec.overlap_table()
    terms = []
    for shared in (0, 1):
        for bit in (0, 1):
            sent = 2 * shared + bit
            wrong = 2 * shared + (1 - bit)
            for resent, p_arrive, weight in _eve_branches_bb84(eve, sent, ov):
                # State-dependent probabilities multiply first; the dyadic
                # branch weights join last so exact cases stay exact.
                terms.append((0.25 * weight) * (p_arrive * float(ov[wrong, resent])))
    return math.fsum(terms)


def _eve_branches_b92(eve: EveStrategy, bit: int, ov: np.ndarray):
    if eve is EveStrategy.NONE:
        yield bit, 1.0, 1.0
        return
    if eve is EveStrategy.BASIS_INTERCEPT:
        # Measurement basis built on signal state eb: collapse onto the
        # signal state itself or onto its complement (index eb + 2).
        for eb in (0, 1):
            p_signal = float(ov[eb, bit])
            yield eb, p_signal, 0.5
            yield eb + 2, 1.0 - p_signal, 0.5
        return
    # Projector intercept: a conclusive click identifies bit j and the
    # identified signal state is resent; the inconclusive outcome collapses
    # onto the excluded partner state, which is resent as-is.
    for j in (0, 1):
        p_conclusive = 1.0 - float(ov[1 - j, bit])
        yield j, p_conclusive, 0.5
        yield 1 - j, 1.0 - p_conclusive, 0.5


def _enumerate_b92(spec: B92Spec, eve: EveStrategy) -> float:
    ov = spec.overlap_table()
    terms = []
    for bit in (0, 1):
        for resent, p_arrive, weight in _eve_branches_b92(eve, bit, ov):
            # The contradiction-capable projector annihilates the sent
            # state, so its click probability on the resent state chi is
            # 1 - |<u_bit|chi>|^2.
            p_contradict = 1.0 - float(ov[bit, resent])
            terms.append((0.5 * weight) * (p_arrive * p_contradict))
    return math.fsum(terms)


def exact_enumeration(spec, eve: EveStrategy) -> float:
    """Exact detection probability by exhaustive branch enumeration.

    Walks every discrete branch (sent state, eavesdropper choice and
    outcome, receiver outcome) multiplying exact probabilities. Serves as
    the independent oracle for the closed-form expressions.
    """
    if isinstance(spec, BB84Spec):
        return _enumerate_bb84(spec, eve)
    if isinstance(spec, B92Spec):
        return _enumerate_b92(spec, eve)
    raise ValidationError(f"unsupported spec type: {type(spec).__name__}")


@dataclass(frozen=True)
class DetectionStats:
    """Monte Carlo detection estimate against the closed-form value."""

    protocol: str
    overlap: float
    eve: EveStrategy
    trials: int
    seed: int
    detections: int
    estimate: float
    stderr: float
    analytic: float
    zscore: float

    def to_json_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "s_or_t": self.overlap,
            "eve": self.eve.value,
            "trials": self.trials,
            "seed": self.seed,
            "detections": self.detections,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "analytic": self.analytic,
            "zscore": self.zscore,
        }


def _bb84_chunk(spec: BB84Spec, eve: EveStrategy, u: np.ndarray) -> int:
    ov = spec.overlap_table()
    shared = (u[:, 0] >= 0.5).astype(np.intp)
    bit = (u[:, 1] >= 0.5).astype(np.intp)
    sent = 2 * shared + bit
    if eve is EveStrategy.NONE:
        resent = sent
    else:
        if eve is EveStrategy.PROJECTOR_INTERCEPT:
            raise DomainError(
                "the four-state scheme supports only 'none' and 'basis' eavesdroppers")
        eve_basis = (u[:, 2] >= 0.5).astype(np.intp)
        p_first = ov[2 * eve_basis, sent]
        outcome = (u[:, 3] >= p_first).astype(np.intp)
        resent = 2 * eve_basis + outcome
    wrong = 2 * shared + (1 - bit)
    p_wrong = ov[wrong, resent]
    return int(np.count_nonzero(u[:, 4] < p_wrong))


def _b92_chunk(spec: B92Spec, eve: EveStrategy, u: np.ndarray) -> int:
    ov = spec.overlap_table()
    bit = (u[:, 0] >= 0.5).astype(np.intp)
    if eve is EveStrategy.NONE:
        resent = bit
    elif eve is EveStrategy.BASIS_INTERCEPT:
        eb = (u[:, 1] >= 0.5).astype(np.intp)
        p_signal = ov[eb, bit]
        onto_signal = u[:, 2] < p_signal
        resent = np.where(onto_signal, eb, eb + 2)
    else:
        j = (u[:, 1] >= 0.5).astype(np.intp)
        p_conclusive = 1.0 - ov[1 - j, bit]
        conclusive = u[:, 2] < p_conclusive
        resent = np.where(conclusive, j, 1 - j)
    p_contradict = 1.0 - ov[bit, resent]
    return int(np.count_nonzero(u[:, 3] < p_contradict))


def _chunk_worker(args) -> int:
    protocol, overlap, eve_name, seed, start, stop = args
    eve = EveStrategy(eve_name)
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(_TRIAL_BLOCKS * start)
    u = np.random.Generator(bitgen).random((stop - start, _TRIAL_DRAWS))
    if protocol == "bb84":
        return _bb84_chunk(BB84Spec(overlap), eve, u)
    return _b92_chunk(B92Spec(overlap), eve, u)


def simulate(spec, eve: EveStrategy, trials: int, seed: int,
             jobs: int = 1) -> DetectionStats:
    """Run independent single-transmission experiments of the detection event.

    Bit-reproducible for fixed (seed, trials) on any worker count: trial t
    always consumes the same counter-indexed substream, and the aggregate
    is an integer sum.
    """
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials!r}")
    if isinstance(spec, BB84Spec):
        protocol = "bb84"
        overlap = spec.s
        analytic = 0.0 if eve is EveStrategy.NONE else bb84_detection_analytic(spec)
    elif isinstance(spec, B92Spec):
        protocol = "b92"
        overlap = spec.t
        analytic = b92_detection_analytic(spec, eve)
    else:
        raise ValidationError(f"unsupported spec type: {type(spec).__name__}")
    if protocol == "bb84" and eve is EveStrategy.PROJECTOR_INTERCEPT:
        raise DomainError(
            "the four-state scheme supports only 'none' and 'basis' eavesdroppers")

    tasks = [(protocol, overlap, eve.value, seed, a, min(a + _CHUNK_TRIALS, trials))
             for a in range(0, trials, _CHUNK_TRIALS)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            counts = list(pool.map(_chunk_worker, tasks))
    else:
        counts = [_chunk_worker(t) for t in tasks]
    detections = int(sum(counts))

    estimate = detections / trials
    stderr = math.sqrt(estimate * (1.0 - estimate) / trials)
    if stderr > 0.0:
        zscore = (estimate - analytic) / stderr
    elif estimate == analytic:
        zscore = 0.0
    else:
        zscore = math.copysign(math.inf, estimate - analytic)
    return DetectionStats(protocol=protocol, overlap=overlap, eve=eve,
                          trials=trials, seed=seed, detections=detections,
                          estimate=estimate, stderr=stderr,
                          analytic=analytic, zscore=zscore)
