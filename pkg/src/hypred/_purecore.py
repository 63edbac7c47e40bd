"""NumPy implementations of the hot array kernels.

Same contract as the compiled core in ``_fastcore.pyx``; ``_backend`` picks
one at import time.  All inputs are float64 arrays; points and line normals
use hyperboloid coordinates with Minkowski signature (-,+,+).
"""

import numpy as np


def _mdots(a, b):
    # rows of a against rows of b, Minkowski signature (-,+,+)
    return a[:, 1:] @ b[:, 1:].T - np.outer(a[:, 0], b[:, 0])


def widths_minmax(verts, normals):
    """Signed-distance summary of vertices against many candidate lines.

    Returns (width, lo, hi) per normal: width = max |arsinh <v,u>| over
    vertices, lo/hi = min/max signed distance.
    """
    s = np.arcsinh(_mdots(normals, verts))
    return np.abs(s).max(axis=1), s.min(axis=1), s.max(axis=1)


def covered_by_any(points, tri_normals, tol):
    """Which points lie in at least one geodesic triangle.

    tri_normals has shape (T, 3, 3): per triangle, the three inward unit
    normals of its edge lines.  A point counts as inside a triangle when all
    three signed distances are >= -tol.
    """
    cut = -np.sinh(tol)
    dots = np.einsum("pc,tec->pte", points, tri_normals)
    inside = (dots >= cut).all(axis=2)
    return inside.any(axis=1).astype(np.uint8)


def min_signed(points, edge_normals):
    """Per point, the minimum signed distance over the given edge lines."""
    return np.arcsinh(_mdots(points, edge_normals)).min(axis=1)


def max_pair_mdot(verts):
    """Largest -<v_i, v_j> over vertex pairs (arcosh of it is the diameter)."""
    m = -_mdots(verts, verts)
    return float(m.max())
