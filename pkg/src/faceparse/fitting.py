"""Category-wise contour fitting.

Each facial part is fitted in a normalized frame: the part's first->last
landmark axis is rotated onto +x, the centroid moved to the origin and the
axis half-length scaled to 1.  Fitting there makes the result equivariant
under similarity transforms of the input by construction.

Three strategies:
  * smoothed polygon - centripetal Catmull-Rom through the landmarks,
    ``smoothing - 1`` interpolated vertices per segment (smoothing=1 is the
    plain polygon);
  * parabola pair - least-squares parabola per arc (eyes, inner mouth),
    sampled and joined at the shared corners;
  * piecewise nose - left/right open chains smoothed independently and
    stitched along the bridge, so profile faces degrade to one half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePart, IllConditionedFit

# below this separation two vertices count as the same point
_DUPLICATE_TOL = 1e-9
_CONDITION_LIMIT = 1e8


@dataclass(frozen=True)
class SimilarityTransform:
    """q = scale * R(rotation) @ p + translation."""

    scale: float
    rotation: float
    translation: tuple[float, float]

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        x, y = pts[..., 0], pts[..., 1]
        out = np.empty(pts.shape, dtype=float)
        out[..., 0] = self.scale * (c * x - s * y) + self.translation[0]
        out[..., 1] = self.scale * (s * x + c * y) + self.translation[1]
        return out

    def inverse(self) -> "SimilarityTransform":
        inv_scale = 1.0 / self.scale
        c, s = math.cos(-self.rotation), math.sin(-self.rotation)
        tx, ty = self.translation
        return SimilarityTransform(
            inv_scale,
            -self.rotation,
            (-inv_scale * (c * tx - s * ty), -inv_scale * (s * tx + c * ty)),
        )


class Contour:
    """Ordered vertex chain; closed for every fitted part."""

    __slots__ = ("vertices", "closed")

    def __init__(self, vertices, closed: bool = True):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2:
            raise ValueError("contour vertices must be an (n, 2) array")
        if not np.isfinite(verts).all():
            raise ValueError("contour vertices must be finite")
        min_pts = 3 if closed else 2
        if verts.shape[0] < min_pts:
            raise DegeneratePart(
                f"contour needs >= {min_pts} vertices, got {verts.shape[0]}"
            )
        nxt = np.roll(verts, -1, axis=0) if closed else verts[1:]
        cur = verts if closed else verts[:-1]
        if (np.hypot(*(nxt - cur).T) < _DUPLICATE_TOL).any():
            raise ValueError("consecutive duplicate vertices")
        verts.setflags(write=False)
        self.vertices = verts
        self.closed = bool(closed)

    def __len__(self):
        return self.vertices.shape[0]

    def __repr__(self):
        return f"Contour({len(self)} vertices, closed={self.closed})"

    def to_list(self) -> list[list[float]]:
        return self.vertices.tolist()


@dataclass(frozen=True)
class Parabola:
    """y = a*x^2 + b*x + c over [x_min, x_max] in the fitting frame."""

    a: float
    b: float
    c: float
    x_min: float
    x_max: float

    def __call__(self, x):
        return (self.a * x + self.b) * x + self.c


def _dedupe_consecutive(pts: np.ndarray, closed: bool) -> np.ndarray:
    if pts.shape[0] == 0:
        return pts
    keep = np.ones(pts.shape[0], dtype=bool)
    keep[1:] = np.hypot(*(pts[1:] - pts[:-1]).T) >= _DUPLICATE_TOL
    out = pts[keep]
    while closed and out.shape[0] > 1 and np.hypot(*(out[-1] - out[0])) < _DUPLICATE_TOL:
        out = out[:-1]
    return out


def normalize_part(points) -> tuple[SimilarityTransform, np.ndarray]:
    """Map a part into its canonical frame.

    The first->last point axis lands on +x with half-length 1 and the
    centroid at the origin.  If first and last coincide (ring-ordered
    parts), the most distant point pair supplies the axis instead.
    Returns the forward transform and the transformed points.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("normalize_part expects an (n>=2, 2) array")
    if not np.isfinite(pts).all():
        raise ValueError("points must be finite")
    if np.ptp(pts, axis=0).max() < _DUPLICATE_TOL:
        raise DegeneratePart("all part points coincide")

    axis = pts[-1] - pts[0]
    if np.hypot(axis[0], axis[1]) < _DUPLICATE_TOL:
        diff = pts[:, None, :] - pts[None, :, :]
        d2 = (diff ** 2).sum(axis=2)
        i, j = np.unravel_index(int(np.argmax(d2)), d2.shape)
        if i > j:
            i, j = j, i
        axis = pts[j] - pts[i]

    length = math.hypot(axis[0], axis[1])
    scale = 2.0 / length
    rot = -math.atan2(axis[1], axis[0])
    cx, cy = (float(v) for v in pts.mean(axis=0))
    c, s = math.cos(rot), math.sin(rot)
    transform = SimilarityTransform(
        scale, rot, (-scale * (c * cx - s * cy), -scale * (s * cx + c * cy))
    )
    return transform, transform.apply(pts)


def _catmull_rom_segment(p0, p1, p2, p3, fractions: np.ndarray) -> np.ndarray:
    """Centripetal Catmull-Rom points between p1 and p2 at the given fractions."""
    p0, p1, p2, p3 = (np.asarray(p, dtype=float) for p in (p0, p1, p2, p3))
    t0 = 0.0
    t1 = t0 + math.sqrt(math.dist(p0, p1))
    t2 = t1 + math.sqrt(math.dist(p1, p2))
    t3 = t2 + math.sqrt(math.dist(p2, p3))
    t = (t1 + (t2 - t1) * fractions).reshape(-1, 1)

    a1 = (t1 - t) / (t1 - t0) * p0 + (t - t0) / (t1 - t0) * p1
    a2 = (t2 - t) / (t2 - t1) * p1 + (t - t1) / (t2 - t1) * p2
    a3 = (t3 - t) / (t3 - t2) * p2 + (t - t2) / (t3 - t2) * p3
    b1 = (t2 - t) / (t2 - t0) * a1 + (t - t0) / (t2 - t0) * a2
    b2 = (t3 - t) / (t3 - t1) * a2 + (t - t1) / (t3 - t1) * a3
    return (t2 - t) / (t2 - t1) * b1 + (t - t1) / (t2 - t1) * b2


def fit_polygon_smooth(points, smoothing: int = 4, closed: bool = True) -> Contour:
    """Contour through all input points with Catmull-Rom interpolation.

    ``smoothing`` (rho) is the vertex density per input segment: rho - 1
    interpolated vertices are inserted between consecutive landmarks, so
    rho = 1 reproduces the plain polygon exactly.  Input points always
    survive as contour vertices.
    """
    if smoothing < 1:
        raise ValueError("smoothing must be >= 1")
    pts = _dedupe_consecutive(np.asarray(points, dtype=float), closed)
    min_pts = 3 if closed else 2
    if pts.shape[0] < min_pts:
        raise DegeneratePart(
            f"need >= {min_pts} distinct points, got {pts.shape[0]}"
        )
    n = pts.shape[0]
    if smoothing == 1 or (not closed and n == 2):
        return Contour(pts, closed=closed)

    fractions = np.arange(1, smoothing) / smoothing
    out = []
    if closed:
        for i in range(n):
            p0, p1 = pts[(i - 1) % n], pts[i]
            p2, p3 = pts[(i + 1) % n], pts[(i + 2) % n]
            out.append(p1[None, :])
            out.append(_catmull_rom_segment(p0, p1, p2, p3, fractions))
    else:
        # reflect the ends to get ghost control points for the open chain
        ghost_head = 2.0 * pts[0] - pts[1]
        ghost_tail = 2.0 * pts[-1] - pts[-2]
        ext = np.vstack([ghost_head, pts, ghost_tail])
        for i in range(n - 1):
            out.append(pts[i][None, :])
            out.append(
                _catmull_rom_segment(ext[i], ext[i + 1], ext[i + 2], ext[i + 3], fractions)
            )
        out.append(pts[-1][None, :])
    verts = _dedupe_consecutive(np.vstack(out), closed)
    return Contour(verts, closed=closed)


def fit_parabola(points) -> Parabola:
    """Least-squares parabola y(x); exact when given 3 distinct-x points."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise DegeneratePart("parabola fit needs >= 3 points")
    x, y = pts[:, 0], pts[:, 1]
    design = np.stack([x * x, x, np.ones_like(x)], axis=1)
    u, s, vt = np.linalg.svd(design, full_matrices=False)
    if s[-1] <= 0 or s[0] / s[-1] > _CONDITION_LIMIT:
        raise IllConditionedFit(
            f"parabola design matrix condition {s[0] / max(s[-1], 1e-300):.3g}"
        )
    a, b, c = vt.T @ ((u.T @ y) / s)
    return Parabola(float(a), float(b), float(c), float(x.min()), float(x.max()))


def fit_parabola_pair(upper, lower, samples: int = 16) -> Contour:
    """Closed contour from two arcs, one parabola each.

    Both arcs must run corner to corner in the same direction.  The fit
    happens in the part's normalized frame; the sampled curves are clamped
    to the shared corners and mapped back to image space.
    """
    up = np.asarray(upper, dtype=float)
    lo = np.asarray(lower, dtype=float)
    if up.shape[0] < 3 or lo.shape[0] < 3:
        raise DegeneratePart("each arc needs >= 3 points")
    samples = max(2, int(samples))

    transform, norm = normalize_part(np.vstack([up, lo]))
    nu, nl = norm[: up.shape[0]], norm[up.shape[0]:]
    corner_l = (nu[0] + nl[0]) / 2.0
    corner_r = (nu[-1] + nl[-1]) / 2.0
    if abs(corner_r[0] - corner_l[0]) < _DUPLICATE_TOL:
        raise DegeneratePart("arc corners collapse in x")

    par_up = fit_parabola(nu)
    par_lo = fit_parabola(nl)

    xs = np.linspace(corner_l[0], corner_r[0], samples)
    top = np.stack([xs, par_up(xs)], axis=1)
    bottom = np.stack([xs, par_lo(xs)], axis=1)
    top[0], top[-1] = corner_l, corner_r
    bottom[0], bottom[-1] = corner_l, corner_r

    ring = np.vstack([top, bottom[-2:0:-1]])
    verts = _dedupe_consecutive(transform.inverse().apply(ring), closed=True)
    if verts.shape[0] < 3:
        raise DegeneratePart("parabola pair collapsed")
    return Contour(verts, closed=True)


def _smooth_in_normalized_frame(points, smoothing: int, closed: bool) -> np.ndarray:
    transform, norm = normalize_part(points)
    fitted = fit_polygon_smooth(norm, smoothing, closed=closed)
    return transform.inverse().apply(fitted.vertices)


def fit_nose(points, left_indices, right_indices, visible=None,
             smoothing: int = 4) -> Contour:
    """Nose outline from two open chains running bridge-top to base.

    Each chain is smoothed independently in its own normalized frame and
    the halves are stitched into one closed ring.  A chain whose points
    are all invisible (profile face) is dropped; the remaining half is
    closed on itself.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    vis = np.ones(n, dtype=bool) if visible is None else np.asarray(visible, dtype=bool)

    def chain(indices):
        idx = [i for i in indices if vis[i]]
        sel = _dedupe_consecutive(pts[idx], closed=False) if idx else np.empty((0, 2))
        return sel if sel.shape[0] >= 2 else None

    left = chain(left_indices)
    right = chain(right_indices)
    if left is None and right is None:
        raise DegeneratePart("both nose halves invisible or degenerate")

    if left is None or right is None:
        half = left if left is not None else right
        if half.shape[0] < 3:
            raise DegeneratePart("single visible nose half has < 3 points")
        return Contour(
            _dedupe_consecutive(_smooth_in_normalized_frame(half, smoothing, True), True),
            closed=True,
        )

    left_line = _smooth_in_normalized_frame(left, smoothing, closed=False)
    right_line = _smooth_in_normalized_frame(right, smoothing, closed=False)
    ring = _dedupe_consecutive(np.vstack([left_line, right_line[::-1]]), closed=True)
    if ring.shape[0] < 3:
        raise DegeneratePart("stitched nose contour collapsed")
    return Contour(ring, closed=True)


def fit_part(entry, points, visibility=None) -> Contour | None:
    """Fit one schema entry; None when too few visible points to fit.

    ``points`` is the full landmark array the schema indexes into.
    """
    pts = np.asarray(points, dtype=float)
    vis = (
        np.ones(pts.shape[0], dtype=bool)
        if visibility is None
        else np.asarray(visibility, dtype=bool)
    )
    if not vis[list(entry.indices)].any():
        return None

    if entry.strategy == "polygon":
        sel = [i for i in entry.indices if vis[i]]
        if len(sel) < 3:
            return None
        verts = _smooth_in_normalized_frame(pts[sel], entry.smoothing, entry.closed)
        return Contour(_dedupe_consecutive(verts, entry.closed), closed=entry.closed)

    if entry.strategy == "parabola_pair":
        up = [i for i in entry.upper if vis[i]]
        lo = [i for i in entry.lower if vis[i]]
        if len(up) < 3 or len(lo) < 3:
            return None
        return fit_parabola_pair(pts[up], pts[lo], entry.samples)

    if entry.strategy == "piecewise_nose":
        usable = sum(
            1 for side in (entry.left, entry.right)
            if sum(vis[i] for i in side) >= 2
        )
        if usable == 0:
            return None
        return fit_nose(pts, entry.left, entry.right, vis, entry.smoothing)

    raise ValueError(f"unknown strategy {entry.strategy!r}")


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def contour_is_simple(contour: Contour) -> bool:
    """True when no two non-adjacent edges intersect (O(n^2) check)."""
    v = contour.vertices
    n = v.shape[0]
    edges = [(v[i], v[(i + 1) % n]) for i in range(n if contour.closed else n - 1)]
    m = len(edges)
    for i in range(m):
        a1, a2 = edges[i]
        for j in range(i + 1, m):
            adjacent = j == i + 1 or (contour.closed and i == 0 and j == m - 1)
            if adjacent:
                continue
            b1, b2 = edges[j]
            d1 = _orient(a1, a2, b1)
            d2 = _orient(a1, a2, b2)
            d3 = _orient(b1, b2, a1)
            d4 = _orient(b1, b2, a2)
            if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
                return False
    return True
