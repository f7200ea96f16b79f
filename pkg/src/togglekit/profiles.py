"""Sweeps over the realized flip angle: inversion profiles, trajectories,
rotation-error metrics, the glide-reflection duality check, and the
conversion of symmetric pi-inverters into balanced pi/2 sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import averaging, rotcore, toggling
from .rotcore import Rotation, quat_apply
from .seqmodel import (RotationSequence, net_propagator, prefix_quaternions,
                       riffle, sequence_from_axes)

DEFAULT_GRID = np.linspace(0.0, 2.0 * np.pi, 721)   # half-degree steps
DEFAULT_GRID.flags.writeable = False


@dataclass(frozen=True)
class ProfileSample:
    beta_prime: float
    q: float
    final_vector: np.ndarray
    net_rotation: Rotation


def _net_quats(s: RotationSequence, beta_primes: np.ndarray) -> np.ndarray:
    """Net propagator quaternions over a sweep of absolute flip angles."""
    beta = s.uniform_beta()
    scales = np.asarray(beta_primes, dtype=float) / beta
    axes = np.broadcast_to(s.axes, (scales.size,) + s.axes.shape)
    angles = scales[:, None] * s.betas[None, :]
    return prefix_quaternions(axes, angles)[:, -1, :]


def q_values(s: RotationSequence, e_xi, grid) -> np.ndarray:
    """Transformation amplitude e_xi . (U(beta') e_xi) over the grid."""
    e_xi = np.asarray(e_xi, dtype=float)
    quats = _net_quats(s, np.asarray(grid, dtype=float))
    return quat_apply(quats, e_xi) @ e_xi


def q_profile(s: RotationSequence, e_xi, grid=None) -> list[ProfileSample]:
    """Inversion profile q(beta') = e_xi . (U(beta') e_xi).

    q(0) = 1 always; nominal inverters also reach q(beta'=pi) = -1.
    """
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    e_xi = np.asarray(e_xi, dtype=float)
    quats = _net_quats(s, grid)
    finals = quat_apply(quats, e_xi)
    qs = finals @ e_xi
    return [ProfileSample(float(bp), float(qv), fv, Rotation(qq))
            for bp, qv, fv, qq in zip(grid, qs, finals, quats)]


def _require_inverter(s: RotationSequence, e_xi, tol: float = 1e-8) -> None:
    q_pi = float(q_values(s, e_xi, [np.pi])[0])
    if abs(q_pi + 1.0) > tol:
        raise ValueError(f"{s.name!r} is not a nominal inverter of the probe "
                         f"vector (q(pi) = {q_pi:.6g})")


def glide_reflection_deviations(s: RotationSequence, s_dual: RotationSequence,
                                grid=None, e_xi=rotcore.E_Z) -> tuple[float, float]:
    """Max-over-grid deviation |q_dual(b') + q_s(pi + b')| and the same for
    the pi - b' branch."""
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    _require_inverter(s, e_xi)
    _require_inverter(s_dual, e_xi)
    qd = q_values(s_dual, e_xi, grid)
    plus = float(np.max(np.abs(qd + q_values(s, e_xi, np.pi + grid))))
    minus = float(np.max(np.abs(qd + q_values(s, e_xi, np.pi - grid))))
    return plus, minus


def glide_reflection_check(s: RotationSequence, s_dual: RotationSequence,
                           grid=None, e_xi=rotcore.E_Z) -> float:
    """Smaller of the two branch deviations of the glide relation
    q_dual(b') = -q_s(pi +/- b')."""
    return min(glide_reflection_deviations(s, s_dual, grid, e_xi))


def trajectory(s: RotationSequence, v0, beta_prime: float) -> np.ndarray:
    """Probe vector v0 followed through the sequence at flip angle beta':
    n+1 rows, starting with v0 itself."""
    beta = s.uniform_beta()
    v0 = np.asarray(v0, dtype=float)
    quats = prefix_quaternions(s.axes, (beta_prime / beta) * s.betas)
    return quat_apply(quats, v0)


def rotation_error(s: RotationSequence, beta_prime: float, target: Rotation) -> float:
    """Residual rotation angle of target^-1 U(beta'), in degrees."""
    beta = s.uniform_beta()
    u = net_propagator(s, beta_prime / beta)
    return float(np.degrees(rotcore.rotation_angle_between(target, u)))


# ---------------------------------------------------------------------------
# m=2 -> m=4 conversion
# ---------------------------------------------------------------------------

_MIRROR_XZ = np.array([1.0, -1.0, 1.0])


def _mirror_asymmetry(axes: np.ndarray) -> float:
    """Set-wise distance of ``axes`` from its own xz-plane mirror image."""
    mirrored = axes * _MIRROR_XZ
    d2 = np.sum((mirrored[:, None, :] - axes[None, :, :]) ** 2, axis=-1)
    return float(np.sqrt(d2.min(axis=1).max()))


def _rotated_about_z(axes: np.ndarray, delta: float) -> np.ndarray:
    c, s = np.cos(delta), np.sin(delta)
    out = axes.copy()
    out[:, 0] = c * axes[:, 0] - s * axes[:, 1]
    out[:, 1] = s * axes[:, 0] + c * axes[:, 1]
    return out


def _symmetrizing_angles(axes: np.ndarray, coarse: float = 1e-4,
                         tol: float = 1e-9) -> list[float]:
    """Global z-rotation angles that make the axis set mirror-symmetric in
    the xz plane, by coarse scan over [0, 2pi) plus local refinement of
    every coarse local minimum."""
    grid = np.arange(0.0, 2.0 * np.pi, coarse)
    scores = np.empty(grid.size)
    for lo_i in range(0, grid.size, 1024):   # chunked, vectorized over delta
        d = grid[lo_i:lo_i + 1024]
        c, s = np.cos(d)[:, None], np.sin(d)[:, None]
        rx = c * axes[None, :, 0] - s * axes[None, :, 1]
        ry = s * axes[None, :, 0] + c * axes[None, :, 1]
        rot = np.stack([rx, ry, np.broadcast_to(axes[None, :, 2], rx.shape)], axis=-1)
        mirrored = rot * _MIRROR_XZ
        # unit vectors: |a - b|^2 = 2 - 2 a.b
        dots = np.einsum('dik,djk->dij', mirrored, rot)
        d2 = np.maximum(2.0 - 2.0 * dots.max(axis=2), 0.0)
        scores[lo_i:lo_i + 1024] = np.sqrt(d2.max(axis=1))
    left = np.roll(scores, 1)
    right = np.roll(scores, -1)
    local_min = (scores <= left) & (scores <= right) & (scores < 0.1)
    candidates = []
    for i in np.flatnonzero(local_min):
        lo, hi = grid[i] - coarse, grid[i] + coarse
        for _ in range(40):           # golden-section-style shrink on the score
            probes = np.linspace(lo, hi, 9)
            vals = [_mirror_asymmetry(_rotated_about_z(axes, p)) for p in probes]
            j = int(np.argmin(vals))
            lo, hi = probes[max(0, j - 1)], probes[min(8, j + 1)]
            if hi - lo < 1e-13:
                break
        best = 0.5 * (lo + hi)
        if _mirror_asymmetry(_rotated_about_z(axes, best)) < tol:
            candidates.append(best % (2.0 * np.pi))
    merged: list[float] = []
    for c in sorted(candidates):
        if not merged or abs(c - merged[-1]) > 10 * coarse:
            merged.append(c)
    return merged


def convert_m2_to_m4(s: RotationSequence) -> RotationSequence:
    """Convert an order-reversal-symmetric broadband pi-inverter of odd
    length into a balanced 2n-element pi/2 sequence with net rotation
    (pi)_x.

    Pipeline: riffle to pi/2 steps; rotate the toggled axes about x by pi/2
    and cyclically permute them by half the length; reconstruct through the
    inverse toggling map; finally rotate everything about z so the axis set
    is reflection-symmetric in the xz plane.
    """
    if not s.is_equatorial():
        raise ValueError("conversion requires an equatorial sequence")
    if abs(s.uniform_beta() - np.pi) > 1e-9:
        raise ValueError("conversion requires uniform beta = pi")
    if len(s) % 2 == 0:
        raise ValueError("conversion requires odd length")
    if averaging.symmetry_class(s) != "symmetric":
        raise ValueError("conversion requires an order-reversal-symmetric phase list")
    axis, angle = rotcore.to_axis_angle(net_propagator(s))
    if abs(angle - np.pi) > 1e-8 or abs(axis[2]) > 1e-8:
        raise ValueError("conversion requires a nominal equatorial pi inverter")

    r = riffle(s)
    toggled = toggling.toggle_axes(r.axes, r.betas)
    quarter = rotcore.quat_from_axis_angle(rotcore.E_X, np.pi / 2.0)
    lifted = quat_apply(quarter, toggled)
    permuted = np.roll(lifted, len(s), axis=0)
    frame = sequence_from_axes(f"{s.name}->m4", np.pi / 2.0, permuted)
    candidate = toggling.inverse_toggling_map(frame)

    deltas = _symmetrizing_angles(candidate.axes)
    if not deltas:
        raise ValueError("no xz-symmetrizing z-rotation found")
    for delta in deltas:   # smallest angle first; require the (pi)_x net
        axes = _rotated_about_z(candidate.axes, delta)
        out = sequence_from_axes(f"{s.name}->m4", np.full(2 * len(s), np.pi / 2.0), axes)
        ax, ang = rotcore.to_axis_angle(net_propagator(out))
        if abs(ang - np.pi) < 1e-6 and abs(abs(ax[0]) - 1.0) < 1e-6:
            return out
    raise ValueError("no symmetrizing angle yields a (pi)_x net rotation")


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

def profile_csv(s: RotationSequence, e_xi=rotcore.E_Z, grid=None) -> str:
    """Rows beta_prime, q, vx, vy, vz, err_deg (error vs the nominal net)."""
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    samples = q_profile(s, e_xi, grid)
    nominal = net_propagator(s)
    lines = ["beta_prime,q,vx,vy,vz,err_deg"]
    for p in samples:
        err = np.degrees(rotcore.rotation_angle_between(nominal, p.net_rotation))
        v = p.final_vector
        lines.append(",".join(f"{x:.17g}" for x in
                              (p.beta_prime, p.q, v[0], v[1], v[2], err)))
    return "\n".join(lines) + "\n"
