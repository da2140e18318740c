"""Triangulated mesh export of F(s, t) = r(s) + t e(s) as ASCII OBJ.

Vertices are laid out row-major, s varying slowest, t fastest; each grid
cell yields two triangles wound counterclockwise as seen from the +nu
side (nu = e x e' / |e x e'|) where that normal is defined.
"""

import numpy as np


def mesh_counts(ns, nt):
    """(vertex count, triangle count) for an ns x nt sample grid."""
    return ns * nt, 2 * (ns - 1) * (nt - 1)


def sample_grid(curve, ns, nt, t_range):
    """F samples of shape (ns, nt, 3)."""
    if ns < 2 or nt < 2:
        raise ValueError(f"grid must be at least 2x2, got {ns}x{nt}")
    ss = np.linspace(curve.interval[0], curve.interval[1], ns)
    ts = np.linspace(t_range[0], t_range[1], nt)
    pts = np.empty((ns, nt, 3))
    for i, s in enumerate(ss):
        r = curve.base_point(s)
        e = curve.director(s)
        pts[i] = r[None, :] + ts[:, None] * e[None, :]
    return pts, ss, ts


def _winding_sign(curve, pts, ss, ts):
    """+1 if default winding faces +nu on average, else -1."""
    ns, nt, _ = pts.shape
    votes = 0.0
    for i in (ns // 4, ns // 2, (3 * ns) // 4):
        i = min(max(i, 0), ns - 2)
        j = nt // 2
        j = min(j, nt - 2)
        a, b, c = pts[i, j], pts[i + 1, j], pts[i + 1, j + 1]
        n_face = np.cross(b - a, c - a)
        v0, _ = curve.dual_jets(ss[i], 1)
        nu = np.cross(v0.value, v0.deriv().value)
        m = np.linalg.norm(nu)
        if m > 1e-12:
            votes += float(n_face @ (nu / m))
    return 1 if votes >= 0.0 else -1


def write_obj(path, curve, ns, nt, t_range):
    """Write the sampled surface as an OBJ file; returns (nv, nf)."""
    pts, ss, ts = sample_grid(curve, ns, nt, t_range)
    sign = _winding_sign(curve, pts, ss, ts)
    lines = [f"# ruledkit mesh {ns}x{nt}"]
    for i in range(ns):
        for j in range(nt):
            x, y, z = pts[i, j]
            lines.append(f"v {x:.9g} {y:.9g} {z:.9g}")

    def vid(i, j):
        return i * nt + j + 1

    for i in range(ns - 1):
        for j in range(nt - 1):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            if sign > 0:
                lines.append(f"f {a} {b} {c}")
                lines.append(f"f {a} {c} {d}")
            else:
                lines.append(f"f {a} {c} {b}")
                lines.append(f"f {a} {d} {c}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return mesh_counts(ns, nt)
