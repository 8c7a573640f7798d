"""Maslov numbers of loops of lines in the plane and index bookkeeping.

A line in R^2 is stored by an angle theta (the line spanned by (cos, sin)), so
theta and theta + pi describe the same line.  A half turn of the line is one
generator of the fundamental group of the space of lines; with the default
``orientation_sign = -1`` a counterclockwise half turn has Maslov number -2,
so each half turn contributes ``2 * orientation_sign``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

CLOSURE_TOL = 1e-9


class MaslovError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LagrangianLoop:
    """Piecewise-linear angle function on [0, 1]."""

    times: np.ndarray
    angles: np.ndarray
    closed: bool = True
    orientation_sign: int = -1

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        a = np.asarray(self.angles, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "angles", a)
        if t.ndim != 1 or t.shape != a.shape or len(t) < 2:
            raise MaslovError("times and angles must be 1-d arrays of equal length >= 2")
        if np.any(np.diff(t) <= 0):
            raise MaslovError("times must be strictly increasing")
        if self.orientation_sign not in (1, -1):
            raise MaslovError("orientation_sign must be +1 or -1")
        if self.closed and not _is_multiple_of_pi(a[-1] - a[0]):
            raise MaslovError("closed loop must satisfy angle(1) = angle(0) mod pi")

    @property
    def sweep(self) -> float:
        return float(self.angles[-1] - self.angles[0])

    def __call__(self, t):
        return np.interp(t, self.times, self.angles)

    def with_sign(self, sign: int) -> "LagrangianLoop":
        return LagrangianLoop(self.times, self.angles, self.closed, sign)


def _is_multiple_of_pi(x: float, tol: float = CLOSURE_TOL) -> bool:
    k = np.round(x / np.pi)
    return abs(x - k * np.pi) <= tol * max(1.0, abs(x))


def half_turns(x: float) -> int:
    return int(np.round(x / np.pi))


def maslov_of_loop(l: LagrangianLoop) -> int:
    """``orientation_sign * 2 * (number of half turns)`` of a closed loop."""
    if not l.closed:
        raise MaslovError("Maslov number needs a closed loop")
    return 2 * l.orientation_sign * half_turns(l.sweep)


def constant_loop(angle: float = 0.0, sign: int = -1) -> LagrangianLoop:
    return LagrangianLoop(np.array([0.0, 1.0]), np.array([angle, angle]), True, sign)


def rotation_loop(half_turns_: int = 1, start: float = 0.0, sign: int = -1,
                  samples: int = 2) -> LagrangianLoop:
    """Uniform rotation by ``half_turns_ * pi`` (counterclockwise when positive)."""
    t = np.linspace(0.0, 1.0, max(samples, 2))
    return LagrangianLoop(t, start + np.pi * half_turns_ * t, True, sign)


def _join(parts: Sequence[LagrangianLoop], closed: bool) -> LagrangianLoop:
    """Concatenate on equal time slots, shifting each piece to continue the last."""
    m = len(parts)
    ts, angs = [], []
    for k, p in enumerate(parts):
        span = p.times[-1] - p.times[0]
        t = (k + (p.times - p.times[0]) / span) / m
        a = p.angles.copy()
        if angs:
            gap = angs[-1][-1] - a[0]
            if not _is_multiple_of_pi(gap):
                raise MaslovError(f"piece {k} does not start on the line where piece {k - 1} ends")
            a = a + np.pi * half_turns(gap)
            t, a = t[1:], a[1:]
        ts.append(t)
        angs.append(a)
    sign = parts[0].orientation_sign
    return LagrangianLoop(np.concatenate(ts), np.concatenate(angs), closed, sign)


def concatenate(a: LagrangianLoop, b: LagrangianLoop) -> LagrangianLoop:
    if a.orientation_sign != b.orientation_sign:
        raise MaslovError("cannot concatenate loops with different sign conventions")
    return _join([a, b], a.closed and b.closed)


def reverse(l: LagrangianLoop) -> LagrangianLoop:
    t = 1.0 - l.times[::-1]
    return LagrangianLoop(t, l.angles[::-1].copy(), l.closed, l.orientation_sign)


def reparametrize(l: LagrangianLoop, phi) -> LagrangianLoop:
    """Precompose with an increasing map of [0, 1] onto itself (sampled on l's knots)."""
    t = np.asarray(phi(l.times), dtype=float)
    return LagrangianLoop(t, l.angles.copy(), l.closed, l.orientation_sign)


# ---------------------------------------------------------------------------
# closing off ends


@dataclass(frozen=True, eq=False)
class BoundaryComponent:
    """``arcs[0], ends[0], arcs[1], ends[1], ...`` in cyclic order.

    Arc i runs between ends i - 1 and i; ``ends[i]`` is the limiting path at
    end i, traversed across the glued half-disk.
    """

    arcs: tuple[LagrangianLoop, ...]
    ends: tuple[LagrangianLoop, ...] = ()


@dataclass(frozen=True, eq=False)
class SurfaceEndData:
    euler_char_closed: int
    components: tuple[BoundaryComponent, ...]
    rank: int = 1

    def __post_init__(self):
        if self.rank != 1:
            raise MaslovError("only rank 1 is supported")


def close_off(d: SurfaceEndData, tol: float = 1e-9) -> list[LagrangianLoop]:
    """One closed loop per boundary component."""
    out = []
    for ci, comp in enumerate(d.components):
        arcs, ends = list(comp.arcs), list(comp.ends)
        if ends and len(ends) != len(arcs):
            raise MaslovError(f"component {ci}: need one end path per arc")
        pieces: list[LagrangianLoop] = []
        for k, arc in enumerate(arcs):
            pieces.append(arc)
            if ends:
                e = ends[k]
                if abs(arc.angles[-1] - e.angles[0]) > tol:
                    raise MaslovError(f"end {k}: path does not start where arc {k} ends")
                # the last end closes the loop, which is checked mod pi below
                if k + 1 < len(arcs) and abs(e.angles[-1] - arcs[k + 1].angles[0]) > tol:
                    raise MaslovError(f"end {k}: path does not end where arc {k + 1} starts")
                pieces.append(e)
        loop = _join(pieces, closed=False)
        if not _is_multiple_of_pi(loop.sweep):
            raise MaslovError(f"component {ci} does not close up (mod pi)")
        out.append(LagrangianLoop(loop.times, loop.angles, True, loop.orientation_sign))
    return out


def total_maslov(d: SurfaceEndData) -> int:
    return sum(maslov_of_loop(l) for l in close_off(d))


def open_path(times, angles, sign: int = -1) -> LagrangianLoop:
    return LagrangianLoop(np.asarray(times, float), np.asarray(angles, float), False, sign)


# ---------------------------------------------------------------------------
# index formulas


def fredholm_index(r: int, chi: int, maslov: int) -> int:
    return int(r) * int(chi) + int(maslov)


def expected_dimension(d: int, maslov_vert: int, degrees: Sequence[int]) -> int:
    """``1 + maslov + sum(1 - deg) + (d - 2)``, the last term the dimension of the
    moduli of disks with d + 1 boundary punctures."""
    if d < 2:
        raise MaslovError("arity d must be at least 2")
    if len(degrees) != d:
        raise MaslovError(f"need {d} degrees, got {len(degrees)}")
    return 1 + int(maslov_vert) + sum(1 - int(g) for g in degrees) + (d - 2)


def maslov_for_dimension(d: int, target: int, degrees: Sequence[int]) -> int:
    """The Maslov number making the expected dimension equal ``target``."""
    return target - expected_dimension(d, 0, degrees)


def euler_characteristic(genus: int = 0, boundary_components: int = 1) -> int:
    """Euler characteristic of the closed-off surface (a disk or strip gives 1)."""
    return 2 - 2 * genus - boundary_components


# ---------------------------------------------------------------------------
# files


def load_angles(path: str | Path, closed: bool = True, sign: int = -1) -> LagrangianLoop:
    vals = np.loadtxt(path, dtype=float, ndmin=2)
    if vals.shape[1] != 2:
        raise MaslovError("angle files hold (t, theta) pairs")
    return LagrangianLoop(vals[:, 0], vals[:, 1], closed, sign)


def save_angles(path: str | Path, l: LagrangianLoop) -> None:
    np.savetxt(path, np.column_stack([l.times, l.angles]), fmt="%.17g")
