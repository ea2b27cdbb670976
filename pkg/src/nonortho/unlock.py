"""Classical-information cost of unlocking hidden nonorthogonality.

Labeling which of the two preparation states each system is in costs U bits
per system; doing the same for the orthogonal preparation of the same
density matrix costs I bits. The gap E = U - I is the excess price paid for
hiding nonorthogonality, and the sweep machinery maps the ratios of these
costs to the ensemble nonorthogonality across the whole feasible (p, z)
rectangle.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .hidden import _check_pz, ensemble_nonortho
from .measures import binary_entropy, binary_entropy_array
from .qstate import ATOL, DomainError, ValidationError

CSV_HEADER = "p,z,U,I,E,N_ens,ratio_U,ratio_E,bits_per_nbit"

# Grid positions are computed as start + index * step, never accumulated,
# so rows are reproducible regardless of chunking.
_GRID_SLACK = 1e-9


def unlock_info(z: float) -> float:
    """Bits per system needed to tell which preparation state it carries."""
    return binary_entropy(z)


def orthogonal_info(p: float) -> float:
    """Bits per system needed for the same labeling of the orthogonal mix."""
    if not (0.5 - ATOL <= p <= 1.0 + ATOL):
        raise DomainError(f"p must lie in [1/2, 1], got {p!r}")
    return binary_entropy(p)


def excess_info(p: float, z: float) -> float:
    """Extra labeling cost of the nonorthogonal preparation, U - I >= 0."""
    p, z = _check_pz(p, z)
    return unlock_info(z) - orthogonal_info(p)


@dataclass(frozen=True)
class UnlockReport:
    """All unlocking quantities at one (p, z) point.

    Ratio fields are None when the ensemble nonorthogonality is too small
    to divide by.
    """

    p: float
    z: float
    u_bits: float
    i_bits: float
    e_bits: float
    n_ens: float
    ratio_u: float | None
    ratio_e: float | None
    bits_per_nbit: float | None


def unlock_report(p: float, z: float, eps: float = 1e-9) -> UnlockReport:
    """Assemble U, I, E, the ensemble nonorthogonality, and their ratios.

    bits_per_nbit is 2 U / N_ens: the ensemble value counts per pair of
    systems while U counts per individual system.
    """
    p, z = _check_pz(p, z)
    u = unlock_info(z)
    i = orthogonal_info(p)
    e = u - i
    ne = ensemble_nonortho(p, z)
    if ne > eps:
        ratio_u = u / ne
        ratio_e = e / ne
        bits_per_nbit = 2.0 * ratio_u
    else:
        ratio_u = ratio_e = bits_per_nbit = None
    return UnlockReport(p=p, z=z, u_bits=u, i_bits=i, e_bits=e, n_ens=ne,
                        ratio_u=ratio_u, ratio_e=ratio_e,
                        bits_per_nbit=bits_per_nbit)


@dataclass(frozen=True)
class SweepGrid:
    """Rectangular sweep over p in [p_start, p_stop], z in [1/2, p]."""

    p_start: float = 0.5
    p_stop: float = 1.0
    p_step: float = 5e-4
    z_step: float = 5e-4
    eps: float = 1e-9

    def __post_init__(self):
        if self.p_step <= 0.0 or self.z_step <= 0.0:
            raise ValidationError("grid steps must be positive")
        if self.eps <= 0.0:
            raise ValidationError("eps must be positive")
        if not (0.5 - ATOL <= self.p_start <= self.p_stop <= 1.0 + ATOL):
            raise ValidationError(
                f"p range must satisfy 1/2 <= start <= stop <= 1, got "
                f"[{self.p_start}, {self.p_stop}]")

    def p_count(self) -> int:
        return int(math.floor(
            (self.p_stop - self.p_start) / self.p_step + _GRID_SLACK)) + 1

    def p_value(self, index: int) -> float:
        return self.p_start + index * self.p_step


@dataclass(frozen=True)
class SweepResult:
    """Summary of one conjecture sweep."""

    grid: SweepGrid
    rows: int
    excluded: int
    min_ratio_u: float
    argmin_p: float
    argmin_z: float
    count_ratio_e_below_1: int
    count_ratio_e_at_least_1: int
    witness_e_below_1: tuple[float, float, float] | None
    witness_e_at_least_1: tuple[float, float, float] | None


def _format_rows(p, z, u, i_bits, e, n_ens, defined, ratio_u, ratio_e):
    lines = []
    for k in range(z.size):
        if defined[k]:
            ru = f"{ratio_u[k]:.12g}"
            re = f"{ratio_e[k]:.12g}"
            bpn = f"{2.0 * ratio_u[k]:.12g}"
        else:
            ru = re = bpn = ""
        lines.append(
            f"{p:.12g},{z[k]:.12g},{u[k]:.12g},{i_bits:.12g},{e[k]:.12g},"
            f"{n_ens[k]:.12g},{ru},{re},{bpn}")
    return lines


def _sweep_chunk(args):
    """Process p indices [i0, i1); pure, so chunk boundaries are arbitrary."""
    (p_start, p_step, z_step, eps, i0, i1, want_rows) = args
    lines: list[str] = []
    rows = 0
    excluded = 0
    min_ru = math.inf
    argmin = (math.nan, math.nan)
    count_lt = 0
    count_ge = 0
    wit_lt = None
    wit_ge = None
    for idx in range(i0, i1):
        p = p_start + idx * p_step
        nz = int(math.floor((p - 0.5) / z_step + _GRID_SLACK)) + 1
        z = 0.5 + z_step * np.arange(nz)
        u = binary_entropy_array(z)
        i_bits = binary_entropy(min(p, 1.0))
        e = u - i_bits
        denom = z * (1.0 - z)
        # z = 1 occurs only at p = 1, where the pair value is 0; q -> 1
        # reproduces that without dividing by zero.
        q = np.where(denom > 0.0,
                     (p * (1.0 - p)) / np.where(denom > 0.0, denom, 1.0), 1.0)
        pair = np.clip(1.0 - 2.0 * np.abs(0.5 - q), 0.0, 1.0)
        n_ens = 2.0 * (1.0 - z) * pair
        defined = n_ens > eps
        rows += nz
        excluded += int(np.count_nonzero(~defined))
        if defined.any():
            ratio_u = np.where(defined, u / np.where(defined, n_ens, 1.0), math.inf)
            ratio_e = np.where(defined, e / np.where(defined, n_ens, 1.0), math.nan)
            k = int(np.argmin(ratio_u))
            if ratio_u[k] < min_ru:
                min_ru = float(ratio_u[k])
                argmin = (p, float(z[k]))
            lt = defined & (ratio_e < 1.0)
            ge = defined & (ratio_e >= 1.0)
            count_lt += int(np.count_nonzero(lt))
            count_ge += int(np.count_nonzero(ge))
            if wit_lt is None and lt.any():
                j = int(np.argmax(lt))
                wit_lt = (p, float(z[j]), float(ratio_e[j]))
            if wit_ge is None and ge.any():
                j = int(np.argmax(ge))
                wit_ge = (p, float(z[j]), float(ratio_e[j]))
        else:
            ratio_u = np.full(nz, math.inf)
            ratio_e = np.full(nz, math.nan)
        if want_rows:
            lines.extend(_format_rows(p, z, u, i_bits, e, n_ens,
                                      defined, ratio_u, ratio_e))
    text = "\n".join(lines)
    return (text, rows, excluded, min_ru, argmin,
            count_lt, count_ge, wit_lt, wit_ge)


def conjecture_sweep(grid: SweepGrid, out=None, jobs: int = 1) -> SweepResult:
    """Sweep the feasible (p, z) grid and summarize the cost ratios.

    Reports the grid minimum of U / N_ens with its argmin and the counts of
    grid points in each E / N_ens regime, with one concrete witness per
    regime. The minimum is reported, never asserted: it is evidence about
    the interior, not a theorem. Points with N_ens <= eps are counted as
    excluded instead of silently dropped.

    When out is a path or file object the full row table is streamed to it
    as CSV. Rows and the summary are deterministic and independent of jobs.
    """
    n_p = grid.p_count()
    if n_p <= 0:
        raise DomainError("sweep grid contains no p values")
    chunk = max(1, math.ceil(n_p / (max(jobs, 1) * 8)))
    bounds = [(a, min(a + chunk, n_p)) for a in range(0, n_p, chunk)]
    want_rows = out is not None
    tasks = [(grid.p_start, grid.p_step, grid.z_step, grid.eps, a, b, want_rows)
             for a, b in bounds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_chunk, tasks))
    else:
        parts = [_sweep_chunk(t) for t in tasks]

    rows = 0
    excluded = 0
    min_ru = math.inf
    argmin = (math.nan, math.nan)
    count_lt = 0
    count_ge = 0
    wit_lt = None
    wit_ge = None
    texts = []
    for (text, prows, pexcl, pmin, parg, plt, pge, pwlt, pwge) in parts:
        rows += prows
        excluded += pexcl
        if pmin < min_ru:
            min_ru = pmin
            argmin = parg
        count_lt += plt
        count_ge += pge
        if wit_lt is None and pwlt is not None:
            wit_lt = pwlt
        if wit_ge is None and pwge is not None:
            wit_ge = pwge
        if want_rows:
            texts.append(text)

    if not math.isfinite(min_ru):
        raise DomainError(
            "no grid point has N_ens above eps; the feasible grid is empty")

    if want_rows:
        body = "\n".join(t for t in texts if t)
        payload = CSV_HEADER + "\n" + body + "\n"
        if hasattr(out, "write"):
            out.write(payload)
        else:
            Path(out).write_text(payload)

    return SweepResult(grid=grid, rows=rows, excluded=excluded,
                       min_ratio_u=min_ru, argmin_p=argmin[0],
                       argmin_z=argmin[1],
                       count_ratio_e_below_1=count_lt,
                       count_ratio_e_at_least_1=count_ge,
                       witness_e_below_1=wit_lt,
                       witness_e_at_least_1=wit_ge)
