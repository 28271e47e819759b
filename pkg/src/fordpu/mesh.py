"""Triangulated boundary of a Cygan sphere in (Re z, Im z, t) coordinates."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .heisenberg import CyganSphere


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray  # (n, 3)
    faces: np.ndarray  # (m, 3), zero-based

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)


def sphere_mesh(sphere: CyganSphere, resolution: int = 32) -> Mesh:
    """Sample the u = 0 locus |z - z0|^4 + (t - t0 + 2 Im(z conj z0))^2 = r^4.

    Writing |z - z0|^2 = r^2 cos(a) and the t offset as r^2 sin(a) gives a
    latitude a in [-pi/2, pi/2]; the poles are single vertices.
    """
    if len(sphere.center.z) != 1:
        raise UsageError("meshes are produced for complex dimension 2 (one z coordinate)")
    if resolution < 3:
        raise UsageError("mesh resolution must be at least 3")
    z0 = sphere.center.z[0]
    t0 = sphere.center.t
    r = sphere.radius
    n_lat = resolution
    n_lon = 2 * resolution
    lats = np.linspace(-math.pi / 2, math.pi / 2, n_lat + 1)[1:-1]
    lons = np.arange(n_lon) * 2 * math.pi / n_lon
    verts = [(z0.real, z0.imag, t0 - r * r)]
    for a in lats:
        rho = r * math.sqrt(max(math.cos(a), 0.0))
        for phi in lons:
            w = rho * complex(math.cos(phi), math.sin(phi))
            z = z0 + w
            t = t0 - 2 * (z * z0.conjugate()).imag + r * r * math.sin(a)
            verts.append((z.real, z.imag, t))
    verts.append((z0.real, z0.imag, t0 + r * r))
    top = len(verts) - 1
    ring = lambda i, j: 1 + i * n_lon + (j % n_lon)
    faces = []
    for j in range(n_lon):
        faces.append((0, ring(0, j + 1), ring(0, j)))
    for i in range(len(lats) - 1):
        for j in range(n_lon):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j), ring(i + 1, j + 1)
            faces.extend([(a, b, d), (a, d, c)])
    last = len(lats) - 1
    for j in range(n_lon):
        faces.append((top, ring(last, j), ring(last, j + 1)))
    return Mesh(np.array(verts), np.array(faces, dtype=int))


def sphere_equation_residual(sphere: CyganSphere, points) -> np.ndarray:
    """| |z-z0|^2 + i(t - t0 + 2 Im(z conj z0)) | - r^2 for each (x, y, t)."""
    pts = np.asarray(points, dtype=float)
    z = pts[:, 0] + 1j * pts[:, 1]
    z0 = sphere.center.z[0]
    val = np.abs(np.abs(z - z0) ** 2 + 1j * (pts[:, 2] - sphere.center.t + 2 * np.imag(z * np.conj(z0))))
    return val - sphere.radius ** 2


def mesh_text(mesh: Mesh, comment: str = "") -> str:
    """OBJ-style text: ``v x y t`` lines then one-based ``f i j k`` lines."""
    lines = [f"# {comment}"] if comment else []
    lines += [f"v {x!r} {y!r} {t!r}" for x, y, t in mesh.vertices.tolist()]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces.tolist()]
    return "\n".join(lines) + "\n"


def read_mesh_text(text: str) -> Mesh:
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(x) - 1 for x in parts[1:4]])
    return Mesh(np.array(verts), np.array(faces, dtype=int))
