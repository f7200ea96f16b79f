"""Toggling-frame transformation of rotation sequences.

The map replaces each axis e_i by U_i^-1 e_i, where U_i is the propagator
of the preceding elements (U_0 = identity), keeping the flip angles.  For
uniform flip angle 2*pi/m the map is cyclic with period m, which is the
organizing fact behind everything in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rotcore
from .rotcore import quat_apply, quat_conj
from .seqmodel import RotationSequence, prefix_quaternions

CYCLE_TOL = 1e-9


@dataclass(frozen=True)
class TogglingFrameSet:
    """Axis vectors of a sequence seen at toggling-frame depth ``depth``."""

    depth: int
    vectors: np.ndarray
    source: RotationSequence


def toggle_axes(axes: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """One toggling transformation on raw axis arrays.

    axes: (..., n, 3); angles: (n,) or broadcastable.  Vectorized over
    leading axes; axis i maps to U_i^-1 axes_i with U_0 the identity.
    """
    prefixes = prefix_quaternions(axes, angles)[..., :-1, :]
    out = quat_apply(quat_conj(prefixes), axes)
    return out / np.linalg.norm(out, axis=-1, keepdims=True)


def toggling_map(s: RotationSequence) -> RotationSequence:
    """One application of the toggling map (same angles, mapped axes)."""
    return s.with_axes(toggle_axes(s.axes, s.betas), name=f"{s.name}^(1)")


def toggled_frame(s: RotationSequence, depth: int = 1) -> TogglingFrameSet:
    """The axis vectors of ``s`` at the given toggling-frame depth.

    The first vector equals the first source axis at every depth, because
    nothing precedes the first element.
    """
    return TogglingFrameSet(depth=depth,
                            vectors=toggling_map_iter(s, depth).axes,
                            source=s)


def toggling_map_iter(s: RotationSequence, m: int) -> RotationSequence:
    """m-fold application of the toggling map (m = 0 returns the input)."""
    if m < 0:
        raise ValueError("iteration count must be non-negative")
    axes = s.axes
    betas = s.betas
    for _ in range(m):
        axes = toggle_axes(axes, betas)
    name = s.name if m == 0 else f"{s.name}^({m})"
    return s.with_axes(axes, name=name)


def closed_form_toggling(s: RotationSequence, m: int) -> RotationSequence:
    """Depth-m toggled axes in closed form: axis i maps through the inverse
    of the prefix product taken with every angle multiplied by m.

    Equals toggling_map_iter(s, m) for any per-element angles.
    """
    if m < 0:
        raise ValueError("iteration count must be non-negative")
    axes = s.axes
    prefixes = prefix_quaternions(axes, m * s.betas)[:-1, :]
    out = quat_apply(quat_conj(prefixes), axes)
    out = out / np.linalg.norm(out, axis=-1, keepdims=True)
    return s.with_axes(out, name=f"{s.name}^({m})")


def inverse_toggling_map(s: RotationSequence) -> RotationSequence:
    """The sequence whose toggling image is ``s``.

    Reconstructs forward: e_0 = f_0, then e_i = U_i f_i with U_i built
    cumulatively from the already-recovered elements.  Valid for any flip
    angles, not only 2*pi/m.
    """
    f = s.axes
    betas = s.betas
    out = np.empty_like(f)
    q = rotcore.quat_identity()
    out[0] = f[0]
    for i in range(1, len(f)):
        step = rotcore.quat_from_axis_angle(out[i - 1], betas[i - 1])
        q = rotcore.quat_mul(step, q)
        q = q / np.linalg.norm(q)
        v = quat_apply(q, f[i])
        out[i] = v / np.linalg.norm(v)
    return s.with_axes(out, name=f"{s.name}^(-1)")


def cyclicity_order(s: RotationSequence, m_max: int, tol: float = CYCLE_TOL) -> int | None:
    """Smallest m <= m_max with M^m s = s (axis-wise max deviation < tol)."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    ref = s.axes
    axes = ref
    betas = s.betas
    for m in range(1, m_max + 1):
        axes = toggle_axes(axes, betas)
        if float(np.max(np.abs(axes - ref))) < tol:
            return m
    return None


# ---------------------------------------------------------------------------
# equatorial phase maps (beta = pi)
# ---------------------------------------------------------------------------

def phase_map(phis) -> np.ndarray:
    """Toggling-frame phases of an all-equatorial pi-pulse phase list:
    phi_i' = phi_0 + sum_{j<=i} (-1)^j (phi_j - phi_{j-1}).
    """
    phis = np.asarray(phis, dtype=float)
    diffs = np.diff(phis)
    signs = (-1.0) ** np.arange(1, phis.size)
    out = np.empty_like(phis)
    out[0] = phis[0]
    out[1:] = phis[0] + np.cumsum(signs * diffs)
    return out


def inverse_phase_map(phis) -> np.ndarray:
    """Inverse of phase_map; the formula is its own inverse."""
    return phase_map(phis)


def finite_difference_duality_check(a: RotationSequence, b: RotationSequence,
                                    tol: float = 1e-9) -> bool:
    """True iff adjacent phase differences satisfy the alternating-sign
    duality: d phi_i[b] = (-1)^i d phi_i[a] (mod 2pi) for all i >= 1.
    """
    if len(a) != len(b):
        raise ValueError("sequences must have equal length")
    da = np.diff(a.phases)
    db = np.diff(b.phases)
    signs = (-1.0) ** np.arange(1, len(a))
    mismatch = np.angle(np.exp(1j * (db - signs * da)))
    return bool(np.max(np.abs(mismatch)) < tol)


def detuning_frame(s: RotationSequence) -> TogglingFrameSet:
    """Detuning-error toggling axes for an equatorial pi-pulse sequence:
    the plain toggled axes with alternating +/- pi/2 rotations about z.
    """
    if not s.is_equatorial():
        raise ValueError("detuning frame requires an equatorial sequence")
    if abs(s.uniform_beta() - np.pi) > 1e-9:
        raise ValueError("detuning frame is defined for uniform beta = pi")
    tilde = toggle_axes(s.axes, s.betas)
    signs = (-1.0) ** np.arange(len(s))
    c = np.cos(signs * np.pi / 2.0)[:, None]
    sn = np.sin(signs * np.pi / 2.0)[:, None]
    x, y, z = tilde[:, 0:1], tilde[:, 1:2], tilde[:, 2:3]
    primed = np.concatenate([c * x - sn * y, sn * x + c * y, z], axis=1)
    return TogglingFrameSet(depth=1, vectors=primed, source=s)


def half_band_check(s: RotationSequence, tol: float = 1e-10) -> bool:
    """True iff the toggling map sends the axis list onto itself element-wise,
    either as vectors up to sign or (for equatorial sequences) as phases up
    to sign.
    """
    if abs(s.uniform_beta() - np.pi) > 1e-9:
        raise ValueError("half-band check is defined for uniform beta = pi")
    e0 = s.axes
    e1 = toggle_axes(e0, s.betas)
    dots = np.sum(e0 * e1, axis=1)
    if np.all(np.abs(dots) > 1.0 - tol):
        return True
    if s.is_equatorial() and np.max(np.abs(e1[:, 2])) < tol:
        p0 = np.arctan2(e0[:, 1], e0[:, 0])
        p1 = np.arctan2(e1[:, 1], e1[:, 0])
        plus = np.abs(np.angle(np.exp(1j * (p1 - p0))))
        minus = np.abs(np.angle(np.exp(1j * (p1 + p0))))
        if np.all(np.minimum(plus, minus) < tol):
            return True
    return False
