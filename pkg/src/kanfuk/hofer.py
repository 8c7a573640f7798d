"""Hofer lengths of paths of great circles on the unit two-sphere.

An oriented great circle is identified with its unit pole, so a path of great
circles is a path on S^2.  The unit sphere has area 4 pi, the symplectic form
is ``omega_x(u, v) = <x, u x v>`` and Hamiltonian vector fields satisfy
``omega(X_H, .) = -dH``.  For ``H(x) = <c, x>`` this gives ``X_H(x) = x x c``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.spatial.transform import Rotation

UNIT_TOL = 1e-12
HALF_AREA = 2 * np.pi
MESH_SLACK = 1e-12  # rounding allowance on the continuity tolerance


class HoferError(ValueError):
    pass


def _normalize(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def arc_angles(p: np.ndarray) -> np.ndarray:
    """Great-circle distances between consecutive rows, computed stably."""
    a, b = p[..., :-1, :], p[..., 1:, :]
    cross = np.linalg.norm(np.cross(a, b), axis=-1)
    dot = np.sum(a * b, axis=-1)
    return np.arctan2(cross, dot)


@dataclass(frozen=True, eq=False)
class PolePath:
    """Pole samples at uniform times ``t_i = i / (N - 1)`` on [0, 1]."""

    samples: np.ndarray
    loop: bool = False

    def __post_init__(self):
        p = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", p)
        if p.ndim != 2 or p.shape[1] != 3 or len(p) < 2:
            raise HoferError("pole samples must be an (N, 3) array with N >= 2")
        err = np.max(np.abs(np.linalg.norm(p, axis=1) - 1.0))
        if err > UNIT_TOL:
            raise HoferError(f"pole samples are not unit vectors (error {err:.3g})")
        if np.max(arc_angles(p), initial=0.0) >= np.pi / 2:
            raise HoferError("consecutive samples are pi/2 or more apart; path under-resolved")
        if self.loop and np.linalg.norm(p[0] - p[-1]) > 1e-9:
            raise HoferError("loop must end where it starts")

    @classmethod
    def from_points(cls, pts, loop: bool = False) -> "PolePath":
        return cls(_normalize(np.asarray(pts, dtype=float)), loop)

    @property
    def n(self) -> int:
        return len(self.samples)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n)

    def resample(self, n: int) -> "PolePath":
        """Piecewise-geodesic resampling at n uniform times."""
        return PolePath(slerp_path(self.samples, np.linspace(0.0, 1.0, n)), self.loop)

    def reversed(self) -> "PolePath":
        return PolePath(self.samples[::-1].copy(), self.loop)


def slerp_path(p: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Evaluate the piecewise-geodesic path through uniform samples p at times t."""
    n = len(p)
    s = np.clip(np.asarray(t, float), 0.0, 1.0) * (n - 1)
    i = np.minimum(np.floor(s).astype(int), n - 2)
    u = (s - i)[:, None]
    a, b = p[i], p[i + 1]
    ang = arc_angles(np.stack([a, b], axis=1))[:, 0][:, None]
    small = ang[:, 0] < 1e-12
    sa = np.where(small[:, None], 1.0, np.sin(ang))
    wa = np.where(small[:, None], 1 - u, np.sin((1 - u) * ang) / sa)
    wb = np.where(small[:, None], u, np.sin(u * ang) / sa)
    return _normalize(wa * a + wb * b)


def concatenate_paths(a: PolePath, b: PolePath) -> PolePath:
    if np.linalg.norm(a.samples[-1] - b.samples[0]) > 1e-9:
        raise HoferError("paths do not meet")
    return PolePath(np.vstack([a.samples, b.samples[1:]]))


def l_plus(path: PolePath, scale: float = 1.0) -> float:
    """Positive Hofer length: ``scale`` times the spherical length of the pole path."""
    return float(scale * np.sum(arc_angles(path.samples)))


def pole_velocity(path: PolePath, i: int) -> np.ndarray:
    """Tangent velocity at sample i from the spherical log map (exact on geodesics)."""
    p = path.samples
    n = path.n
    h = 1.0 / (n - 1)

    def log(x, y):
        w = y - np.dot(x, y) * x
        nw = np.linalg.norm(w)
        if nw < 1e-300:
            return np.zeros(3)
        return w / nw * np.arctan2(nw, np.dot(x, y))

    x = p[i]
    if 0 < i < n - 1:
        return (log(x, p[i + 1]) - log(x, p[i - 1])) / (2 * h)
    if i == 0:
        return log(x, p[1]) / h
    return -log(x, p[n - 2]) / h


@dataclass(frozen=True)
class HeightHamiltonian:
    """``H(x) = <coefficient, x>``: zero mean on the sphere, max ``|coefficient|``."""

    coefficient: np.ndarray

    def __call__(self, x):
        return np.asarray(x) @ self.coefficient

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.coefficient))

    @property
    def max(self) -> float:
        return self.speed

    def vector_field(self, x):
        return np.cross(x, self.coefficient)

    def on_grid(self, n_lat: int = 64, n_lon: int = 128) -> np.ndarray:
        return self(sphere_grid(n_lat, n_lon))


def sphere_grid(n_lat: int, n_lon: int) -> np.ndarray:
    th = (np.arange(n_lat) + 0.5) * np.pi / n_lat
    ph = np.arange(n_lon) * 2 * np.pi / n_lon
    T, P = np.meshgrid(th, ph, indexing="ij")
    return np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1)


def generating_hamiltonian(path: PolePath, t: float) -> HeightHamiltonian:
    """The optimal normalized generator ``H_t(x) = <x, p'(t) x p(t)>``.

    Its flow ``dx/dt = x x (p' x p)`` carries the circle with pole p(t) to the
    circle with pole p(t + dt); it is zero where the pole is stationary.
    """
    i = int(round(t * (path.n - 1)))
    i = min(max(i, 0), path.n - 1)
    v = pole_velocity(path, i)
    return HeightHamiltonian(np.cross(v, path.samples[i]))


# ---------------------------------------------------------------------------
# the coupling-form area


@dataclass(frozen=True)
class EtaProfile:
    """``eta(r) = r^2`` on [0, 1 - 2 delta], 1 on [1 - delta, 1], C^1 cubic between."""

    delta: float = 0.05

    def __post_init__(self):
        if not 0 < self.delta < 1 / 3:
            raise HoferError("delta must lie in (0, 1/3)")
        d = self.delta
        a = 1 - 2 * d
        spline = CubicHermiteSpline([a, 1 - d], [a * a, 1.0], [2 * a, 0.0])
        object.__setattr__(self, "_spline", spline)
        r = np.linspace(a, 1 - d, 2001)
        if np.min(spline(r, 1)) < -1e-12:
            raise HoferError("profile is not monotone for this delta")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        d = self.delta
        out = np.where(r <= 1 - 2 * d, r * r, 1.0)
        mid = (r > 1 - 2 * d) & (r < 1 - d)
        return np.where(mid, self._spline(np.clip(r, 1 - 2 * d, 1 - d)), out)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        d = self.delta
        out = np.where(r <= 1 - 2 * d, 2 * r, 0.0)
        mid = (r > 1 - 2 * d) & (r < 1 - d)
        return np.where(mid, self._spline(np.clip(r, 1 - 2 * d, 1 - d), 1), out)


@dataclass(frozen=True, eq=False)
class CouplingFormSpec:
    path: PolePath
    delta: float = 0.05
    grid: int = 512
    holonomy_tol: float = 1e-6

    @property
    def eta(self) -> EtaProfile:
        return EtaProfile(self.delta)


@dataclass(frozen=True)
class AreaResult:
    area: float
    max_residual: float


def area_functional(spec: CouplingFormSpec, return_details: bool = False):
    """Integral over the disk of the fiberwise max of the curvature.

    The disk has coordinates (rad, theta) with theta the path parameter.  The
    connection of ``omega - d(eta(rad) H_theta d theta)`` transports trivially
    along rad and along theta by the flow of ``eta(rad) H_theta``.  The
    curvature on a grid plaquette is read off from the holonomy around it: a
    rotation by angle phi, generated by a zero-mean height function whose max
    is phi.  The residual is the second-order gap ``phi^2 / 2`` between the
    holonomy and its first-order (curvature) approximation.
    """
    n = spec.grid
    path = spec.path.resample(n + 1) if spec.path.n != n + 1 else spec.path
    p = path.samples
    # theta-edge generators: rotation taking p_j to p_{j+1} along the great circle
    axes = np.cross(p[:-1], p[1:])
    norms = np.linalg.norm(axes, axis=1)
    ang = arc_angles(p)
    unit = np.where(norms[:, None] > 1e-300, axes / np.where(norms > 0, norms, 1)[:, None], 0.0)
    r = np.linspace(0.0, 1.0, n + 1)
    eta = spec.eta(r)
    # transport at radius r_i across theta-edge j: rotation by eta_i * ang_j about unit_j
    rotvec = eta[:, None, None] * (ang[:, None] * unit)[None, :, :]
    R = Rotation.from_rotvec(rotvec.reshape(-1, 3)).as_matrix().reshape(n + 1, n, 3, 3)
    # plaquette (i, j): out along theta at r_i, back along theta at r_{i+1}
    hol = np.einsum("ijba,ijbc->ijac", R[1:], R[:-1])
    phi = Rotation.from_matrix(hol.reshape(-1, 3, 3)).magnitude()
    residual = float(np.max(phi) ** 2 / 2) if phi.size else 0.0
    if residual > spec.holonomy_tol:
        raise HoferError(f"grid too coarse: holonomy residual {residual:.3g} exceeds "
                         f"{spec.holonomy_tol:.3g}")
    area = float(np.sum(phi))
    if return_details:
        return AreaResult(area, residual)
    return area


# ---------------------------------------------------------------------------
# sphere families


def rotation_about(axis: np.ndarray, angles: np.ndarray) -> np.ndarray:
    axis = np.asarray(axis, float)
    return Rotation.from_rotvec(np.outer(angles, axis)).as_matrix()


def uv_sphere(n_lat: int = 8, n_lon: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Triangulated sphere with poles, ``n_lat - 1`` latitude rings (even n_lat puts
    one on the equator) and ``n_lon`` vertices per ring."""
    verts = [np.array([0.0, 0.0, 1.0])]
    for a in range(1, n_lat):
        th = np.pi * a / n_lat
        for b in range(n_lon):
            ph = 2 * np.pi * b / n_lon
            verts.append(np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)]))
    verts.append(np.array([0.0, 0.0, -1.0]))
    V = np.array(verts)
    south = len(V) - 1

    def ring(a, b):
        return 1 + (a - 1) * n_lon + (b % n_lon)

    tris = []
    for b in range(n_lon):
        tris.append((0, ring(1, b), ring(1, b + 1)))
        tris.append((south, ring(n_lat - 1, b + 1), ring(n_lat - 1, b)))
    for a in range(1, n_lat - 1):
        for b in range(n_lon):
            tris.append((ring(a, b), ring(a + 1, b), ring(a + 1, b + 1)))
            tris.append((ring(a, b), ring(a + 1, b + 1), ring(a, b + 1)))
    return V, np.array(tris, dtype=int)


def mesh_edges(triangles: np.ndarray) -> np.ndarray:
    e = np.vstack([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    e = np.sort(e, axis=1)
    return np.unique(e, axis=0)


@dataclass(frozen=True, eq=False)
class SphereFamily:
    """Loops based at ``basepoint`` indexed by the vertices of a triangulated sphere."""

    vertices: np.ndarray
    triangles: np.ndarray
    loops: np.ndarray  # (V, N, 3)
    basepoint: np.ndarray
    mesh_tol: float = np.inf

    def __post_init__(self):
        L = np.asarray(self.loops, float)
        object.__setattr__(self, "loops", L)
        object.__setattr__(self, "basepoint", np.asarray(self.basepoint, float))
        if L.ndim != 3 or L.shape[0] != len(self.vertices) or L.shape[2] != 3:
            raise HoferError("loops must have shape (vertices, samples, 3)")
        if np.max(np.abs(np.linalg.norm(L, axis=2) - 1)) > 1e-9:
            raise HoferError("loop samples must be unit vectors")
        ends = np.concatenate([L[:, 0], L[:, -1]])
        if np.max(np.linalg.norm(ends - self.basepoint, axis=1)) > 1e-12:
            raise HoferError("every loop must start and end at the basepoint")
        if self.continuity() > self.mesh_tol + MESH_SLACK:
            raise HoferError("adjacent loops are further apart than the mesh tolerance")

    @property
    def edges(self) -> np.ndarray:
        return mesh_edges(self.triangles)

    def edge_distances(self, loops: np.ndarray | None = None) -> np.ndarray:
        L = self.loops if loops is None else loops
        e = self.edges
        d = np.sum(L[e[:, 0]] * L[e[:, 1]], axis=2)
        return np.max(np.arccos(np.clip(d, -1, 1)), axis=1)

    def continuity(self) -> float:
        return float(np.max(self.edge_distances(), initial=0.0))

    def lengths(self) -> np.ndarray:
        return np.sum(arc_angles(self.loops), axis=1)

    def path(self, v: int) -> PolePath:
        return PolePath(_normalize(self.loops[v]), loop=True)

    def with_loops(self, loops: np.ndarray, mesh_tol: float | None = None) -> "SphereFamily":
        return SphereFamily(self.vertices, self.triangles, loops, self.basepoint,
                            self.mesh_tol if mesh_tol is None else mesh_tol)


def family_max(f: SphereFamily) -> tuple[float, int]:
    lengths = f.lengths()
    v = int(np.argmax(lengths))
    return float(lengths[v]), v


def optimal_family(n_lat: int = 10, n_lon: int = 24, samples: int = 65,
                   basepoint=(0.0, 0.0, 1.0), turns: int = 1) -> SphereFamily:
    """Loops ``theta -> R(c, 2 pi turns theta) p0`` for parameters c on the sphere.

    The loop at c sweeps the small circle about c through p0, of length
    ``2 pi turns sin d(c, p0)``, so its maximum sits on the ring of parameters
    orthogonal to p0, where the loop is a great circle through p0 and -p0.  The
    mesh is rotated to put that ring on the mesh equator.
    """
    p0 = _normalize(np.asarray(basepoint, float))
    V, T = uv_sphere(n_lat, n_lon)
    # rotate the mesh so that its north pole is p0
    z = np.array([0.0, 0.0, 1.0])
    rot, _ = Rotation.align_vectors([p0], [z])
    V = rot.apply(V)
    theta = np.linspace(0.0, 1.0, samples)
    loops = np.empty((len(V), samples, 3))
    for k, c in enumerate(V):
        R = rotation_about(c, 2 * np.pi * turns * theta)
        loops[k] = R @ p0
    loops[:, 0] = p0
    loops[:, -1] = p0
    loops = _normalize(loops)
    loops[:, 0] = p0
    loops[:, -1] = p0
    fam = SphereFamily(V, T, loops, p0)
    return fam.with_loops(loops, mesh_tol=max(2.0 * fam.continuity(), 1e-9))


def constant_family(n_lat: int = 4, n_lon: int = 8, samples: int = 33,
                    basepoint=(0.0, 0.0, 1.0)) -> SphereFamily:
    p0 = _normalize(np.asarray(basepoint, float))
    V, T = uv_sphere(n_lat, n_lon)
    loops = np.broadcast_to(p0, (len(V), samples, 3)).copy()
    return SphereFamily(V, T, loops, p0, mesh_tol=1e-9)


def perturbed_family(f: SphereFamily, seed: int, amplitude: float = 0.15, modes: int = 4,
                     mesh_factor: float = 1.0) -> SphereFamily:
    """Add a smooth field ``sum_m sin(pi m theta) (B_m c + b_m)`` and renormalize.

    The field vanishes at theta = 0, 1 and depends smoothly on the parameter c,
    so basepoints are kept and neighbouring loops stay close.  The result's
    mesh tolerance is ``mesh_factor`` times its own continuity, so descent may
    not stretch any edge past the longest one present at the start.
    """
    rng = np.random.default_rng(seed)
    n = f.loops.shape[1]
    theta = np.linspace(0.0, 1.0, n)
    field_ = np.zeros_like(f.loops)
    for m in range(1, modes + 1):
        B = rng.normal(size=(3, 3)) / m
        b = rng.normal(size=3) / m
        shape = np.sin(np.pi * m * theta)
        field_ += shape[None, :, None] * (f.vertices @ B.T + b)[:, None, :]
    loops = _normalize(f.loops + amplitude * field_)
    loops[:, 0] = f.basepoint
    loops[:, -1] = f.basepoint
    g = SphereFamily(f.vertices, f.triangles, loops, f.basepoint)
    return g.with_loops(loops, mesh_tol=max(mesh_factor * g.continuity(), 1e-9))


def padded_family(f: SphereFamily, slack: float = 1.0, fraction: float = 0.25,
                  direction=None) -> SphereFamily:
    """Prepend the same out-and-back detour of total length ``slack`` to every loop.

    The first ``fraction`` of the time runs out along a geodesic from the
    basepoint and back; the original loop is replayed on the rest.  All loops
    share the detour, so adjacent loops stay exactly as close as before.
    """
    n = f.loops.shape[1]
    p0 = f.basepoint
    if direction is None:
        direction = np.cross(p0, [1.0, 0.0, 0.0])
        if np.linalg.norm(direction) < 1e-6:
            direction = np.cross(p0, [0.0, 1.0, 0.0])
    u = _normalize(np.asarray(direction, float) - np.dot(direction, p0) * p0)
    t = np.linspace(0.0, 1.0, n)
    head = t <= fraction
    s_ = np.where(head, 1 - np.abs(2 * t / fraction - 1), 0.0) * slack / 2
    out = np.empty_like(f.loops)
    detour = np.cos(s_)[:, None] * p0 + np.sin(s_)[:, None] * u
    tail_t = np.clip((t - fraction) / (1 - fraction), 0.0, 1.0)
    for k in range(len(f.loops)):
        out[k] = np.where(head[:, None], detour, slerp_path(f.loops[k], tail_t))
    out = _normalize(out)
    out[:, 0] = p0
    out[:, -1] = p0
    g = SphereFamily(f.vertices, f.triangles, out, p0)
    return g.with_loops(out, mesh_tol=max(g.continuity(), f.mesh_tol))


@dataclass(frozen=True, eq=False)
class DescentResult:
    family: SphereFamily
    history: tuple[float, ...]
    stall_value: float
    steps_taken: int
    final_step: float
    stalled: bool

    def __str__(self):
        return (f"stall_value={self.stall_value:.9g} steps={self.steps_taken} "
                f"final_step={self.final_step:.9g} stalled={str(self.stalled).lower()}")


def descend_family(f: SphereFamily, steps: int = 500, step_size: float = 0.25,
                   min_step: float = 1e-4, stall_tol: float = 1e-7,
                   stall_window: int = 50, max_halvings: int = 2) -> DescentResult:
    """Discrete curve shortening of every loop with the basepoint held fixed.

    Each step moves sample i by ``tau (p_{i-1} + p_{i+1} - 2 p_i)`` and projects
    back to the sphere.  Vertices whose move would stretch a mesh edge beyond the
    family's tolerance retry with half their move, down to ``2**-max_halvings``,
    and otherwise keep their old loop; if nothing can move the global step is
    halved.  The run stalls once the family max has dropped by less than
    ``stall_tol`` over ``stall_window`` steps.  This is a heuristic optimizer
    and certifies nothing about the minimax value.
    """
    L = f.loops.copy()
    tau = step_size
    history = [family_max(f)[0]]
    edges = f.edges
    cos_tol = np.cos(min(f.mesh_tol + MESH_SLACK, np.pi))
    taken = 0
    stalled = False
    for _ in range(steps):
        lap = np.zeros_like(L)
        lap[:, 1:-1] = L[:, :-2] + L[:, 2:] - 2 * L[:, 1:-1]
        scale = np.ones(len(L))
        while True:
            cand = _normalize(L + (tau * scale)[:, None, None] * lap)
            cand[:, 0] = f.basepoint
            cand[:, -1] = f.basepoint
            cand[scale == 0] = L[scale == 0]
            d = np.min(np.einsum("enk,enk->en", cand[edges[:, 0]], cand[edges[:, 1]]), axis=1)
            bad = d < cos_tol
            if not np.any(bad):
                break
            culprits = np.unique(edges[bad].ravel())
            culprits = culprits[scale[culprits] > 0]
            if not len(culprits):
                break
            scale[culprits] /= 2
            scale[scale < 2.0 ** -max_halvings] = 0.0
        if not np.any(scale):
            tau /= 2
            if tau < min_step:
                stalled = True
                break
            continue
        L = cand
        taken += 1
        history.append(float(np.max(np.sum(arc_angles(L), axis=1))))
        if taken >= stall_window and history[-stall_window - 1] - history[-1] < stall_tol:
            stalled = True
            break
    g = f.with_loops(L)
    return DescentResult(g, tuple(history), history[-1], taken, tau, stalled)


# ---------------------------------------------------------------------------
# files


def load_path(path: str | Path, loop: bool = False) -> PolePath:
    vals = np.loadtxt(path, dtype=float, ndmin=2)
    if vals.shape[1] != 4:
        raise HoferError("path files hold lines 't x y z'")
    return PolePath.from_points(vals[:, 1:], loop)


def save_path(path: str | Path, p: PolePath) -> None:
    np.savetxt(path, np.column_stack([p.times, p.samples]), fmt="%.17g")


def save_family(path: str | Path, f: SphereFamily) -> None:
    V, N = f.loops.shape[0], f.loops.shape[1]
    lines = [f"family {V} {len(f.triangles)} {N}",
             "basepoint " + " ".join(f"{x:.17g}" for x in f.basepoint),
             f"mesh_tol {f.mesh_tol:.17g}"]
    lines += ["vertex " + " ".join(f"{x:.17g}" for x in v) for v in f.vertices]
    lines += ["triangle " + " ".join(str(int(i)) for i in t) for t in f.triangles]
    t = np.linspace(0.0, 1.0, N)
    for k in range(V):
        lines.append(f"path {k}")
        lines += [f"{t[i]:.17g} " + " ".join(f"{x:.17g}" for x in f.loops[k, i]) for i in range(N)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_family(path: str | Path) -> SphereFamily:
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0][0] != "family":
        raise HoferError("missing 'family' header")
    V, F, N = (int(x) for x in lines[0][1:4])
    base = np.array([float(x) for x in lines[1][1:]])
    tol = float(lines[2][1])
    pos = 3
    verts = np.array([[float(x) for x in ln[1:]] for ln in lines[pos:pos + V]])
    pos += V
    tris = np.array([[int(x) for x in ln[1:]] for ln in lines[pos:pos + F]], dtype=int)
    pos += F
    loops = np.empty((V, N, 3))
    for k in range(V):
        if lines[pos] != ["path", str(k)]:
            raise HoferError(f"expected 'path {k}'")
        block = np.array([[float(x) for x in ln] for ln in lines[pos + 1:pos + 1 + N]])
        loops[k] = block[:, 1:]
        pos += N + 1
    return SphereFamily(verts, tris, loops, base, tol)
