"""Rank-2 decoupling under virtual magic-angle spinning, with and without
angle-error compensation of the axis-cycling pulses.

The uncompensated cycle is three equal delays, each closed by a 2pi/3
rotation about the (1,1,1) body diagonal.  The compensated cycle replaces
every rotation with the four-pulse compensated block, keeping delays only
between blocks (pulses are instantaneous in the delta-pulse limit).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import averaging
from .ddsim import DDSequence
from .seqmodel import RotationSequence


def uncompensated_cycle(tau: float = 1.0) -> DDSequence:
    from .catalog import vmas
    return vmas(tau)


def compensated_cycle(tau: float = 1.0) -> DDSequence:
    """Virtual MAS with each (1,1,1) rotation replaced by the compensated
    four-pulse block; delays sit only between blocks."""
    from .catalog import p34
    block = p34()
    els = block.elements * 3
    pulses = RotationSequence("vmas_compensated", els, block.cycle_order)
    delays = np.zeros(13)
    delays[0] = delays[4] = delays[8] = tau
    return DDSequence(pulses, delays)


@dataclass(frozen=True)
class MasSweepRow:
    beta_scale: float
    kappa_row: np.ndarray      # kappa_{2,0,mu'} for mu' = -2..2
    max_abs: float


def mas_kappa_sweep(compensated: bool, beta_scale_grid) -> list[MasSweepRow]:
    """max_mu' |kappa_{2,0,mu'}| versus flip-angle scale for the virtual MAS
    cycle, plus the full mu' row for export."""
    grid = np.atleast_1d(np.asarray(beta_scale_grid, dtype=float))
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    dd = compensated_cycle() if compensated else uncompensated_cycle()
    rows = []
    for s in grid:
        kt = averaging.kappa(dd, 2, float(s))
        row = kt.row(0)
        rows.append(MasSweepRow(float(s), row, float(np.max(np.abs(row)))))
    return rows


def suppression_order_slopes(h: float = 1e-7) -> tuple[float, float]:
    """One-sided finite-difference slopes of max|kappa_{2,0,.}| at eps = 0
    for the uncompensated and compensated cycles.

    The uncompensated cycle has a first-order error (slope well above
    zero); the compensated cycle starts at second order or higher (slope
    consistent with zero to the evaluation noise).
    """
    beta = 2.0 * np.pi / 3.0
    scale = 1.0 + h / beta
    out = []
    for comp in (False, True):
        dd = compensated_cycle() if comp else uncompensated_cycle()
        k0 = float(np.max(np.abs(averaging.kappa(dd, 2, 1.0).row(0))))
        k1 = float(np.max(np.abs(averaging.kappa(dd, 2, scale).row(0))))
        out.append((k1 - k0) / h)
    return out[0], out[1]


def sweep_csv(beta_scale_grid) -> str:
    """CSV rows: scale, value, compensated flag, then the mu' components."""
    lines = ["beta_scale,max_abs_kappa20,compensated,"
             + ",".join(f"re_mu{m},im_mu{m}" for m in range(-2, 3))]
    for comp in (False, True):
        for row in mas_kappa_sweep(comp, beta_scale_grid):
            comps = ",".join(f"{z.real:.17g},{z.imag:.17g}" for z in row.kappa_row)
            lines.append(f"{row.beta_scale:.17g},{row.max_abs:.17g},{int(comp)},{comps}")
    return "\n".join(lines) + "\n"
