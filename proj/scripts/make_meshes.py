#!/usr/bin/env python3
"""Regenerate the checked-in triangular mesh fixtures under meshes/.

Each fixture is a Delaunay triangulation of a structured point cloud whose
interior nodes are jittered with a fixed seed, so the meshes are unstructured
but reproducible. Boundary nodes stay exactly on the domain sides.

Requires numpy + scipy. Usage: python3 scripts/make_meshes.py
"""

import os
import numpy as np
from scipy.spatial import Delaunay

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "meshes")


def fmt(x):
    return format(float(x), ".17g")


def build(points, n_boundary, side_tag, name):
    """Triangulate, tag hull edges by side, and write the mesh file."""
    pts = np.asarray(points)
    tri = Delaunay(pts)
    cells = tri.simplices.copy()

    # enforce CCW orientation
    for c in cells:
        a, b, d = pts[c[0]], pts[c[1]], pts[c[2]]
        if np.cross(b - a, d - a) <= 0:
            c[1], c[2] = c[2], c[1]

    # boundary edges = edges appearing in exactly one cell
    from collections import Counter
    count = Counter()
    for c in cells:
        for k in range(3):
            e = tuple(sorted((c[k], c[(k + 1) % 3])))
            count[e] += 1
    bedges = [e for e, n in count.items() if n == 1]
    assert all(n <= 2 for n in count.values())

    nv = len(pts)
    m = len(cells)
    assert m == 2 * nv - 2 - n_boundary, (m, nv, n_boundary)

    areas = []
    for c in cells:
        a, b, d = pts[c[0]], pts[c[1]], pts[c[2]]
        areas.append(0.5 * np.cross(b - a, d - a))
    areas = np.array(areas)
    print(f"{name}: V={nv} M={m} B={len(bedges)} "
          f"area ratio={areas.max() / areas.min():.2f} min area={areas.min():.4g}")

    path = os.path.join(OUT_DIR, name)
    with open(path, "w") as f:
        f.write(f"# {name}: unstructured triangulation "
                f"(scripts/make_meshes.py)\n")
        f.write(f"{nv} {m} {len(bedges)}\n")
        for p in pts:
            f.write(f"{fmt(p[0])} {fmt(p[1])}\n")
        for c in cells:
            f.write(f"{c[0]} {c[1]} {c[2]}\n")
        for (i, j) in sorted(bedges):
            f.write(f"{i} {j} {side_tag(pts[i], pts[j])}\n")


def square_2pi():
    """58-cell mesh on [0,2pi]^2, all boundaries EXACT."""
    L = 2 * np.pi
    rng = np.random.default_rng(20260809)
    pts = []
    # boundary: corners + 4 interior points per side (B = 20)
    s = [L * k / 5 for k in range(6)]
    for x in s[:-1]:
        pts.append((x, 0.0))
    for y in s[:-1]:
        pts.append((L, y))
    for x in s[1:]:
        pts.append((x, L))
    for y in s[1:]:
        pts.append((0.0, y))
    # interior: 5 x 4 grid, jittered
    xs = [L * (i + 1) / 6 for i in range(5)]
    ys = [L * (j + 1) / 5 for j in range(4)]
    jit = 0.22 * min(L / 6, L / 5)
    for y in ys:
        for x in xs:
            dx, dy = rng.uniform(-jit, jit, 2)
            pts.append((x + dx, y + dy))
    build(pts, 20, lambda a, b: "EXACT", "square2pi_m58.mesh")


def rect_4x1():
    """3200-cell mesh on [0,4]x[0,1] for the shock reflection setup."""
    nx, ny = 81, 21
    rng = np.random.default_rng(19411104)
    xs = np.linspace(0.0, 4.0, nx)
    ys = np.linspace(0.0, 1.0, ny)
    pts = []
    for x in xs:
        pts.append((x, 0.0))
        pts.append((x, 1.0))
    for y in ys[1:-1]:
        pts.append((0.0, y))
        pts.append((4.0, y))
    nb = len(pts)
    jit = 0.2 * min(xs[1] - xs[0], ys[1] - ys[0])
    for y in ys[1:-1]:
        for x in xs[1:-1]:
            dx, dy = rng.uniform(-jit, jit, 2)
            pts.append((x + dx, y + dy))

    def tag(a, b):
        if a[1] == 0.0 and b[1] == 0.0:
            return "WALL"
        if a[1] == 1.0 and b[1] == 1.0:
            return "DIRICHLET_TOP"
        if a[0] == 0.0 and b[0] == 0.0:
            return "DIRICHLET_LEFT"
        if a[0] == 4.0 and b[0] == 4.0:
            return "OUTFLOW"
        raise ValueError(f"edge not on a side: {a} {b}")

    build(pts, nb, tag, "rect4x1_m3200.mesh")


if __name__ == "__main__":
    os.makedirs(OUT_DIR, exist_ok=True)
    square_2pi()
    rect_4x1()
