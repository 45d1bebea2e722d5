"""Exact codings of circle rotations and of straight-line trajectories.

Every orbit point lives in one real quadratic field and every interval test
goes through exact sign computations.  Three independent routes produce the
coding of a line of direction ``theta`` started at ``x``: the cutting
sequence of the unfolded line, the billiard in the unit square (real
reflections), and the linear flow on the torus.  They are meant to be
compared with each other and with :func:`rotation_word`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .quadratic import QuadraticReal, qr, qr_floor
from .words import Alphabet, FiniteWord, WordStream

__all__ = [
    "RotationParams",
    "LineParams",
    "DegenerateTrajectoryError",
    "rotation_word",
    "rotation_stream",
    "cutting_sequence",
    "billiard_word",
    "flow_word",
    "projected_start",
    "rotation_cylinders",
    "render_trajectory_svg",
]

BINARY = Alphabet.standard(2)


class DegenerateTrajectoryError(ValueError):
    """The trajectory passes through a grid point (a corner of the table)."""


@dataclass(frozen=True)
class RotationParams:
    y: QuadraticReal
    alpha: QuadraticReal

    def __post_init__(self):
        y, alpha = qr(self.y), qr(self.alpha)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "alpha", alpha)
        if alpha.is_rational:
            raise ValueError("invalid arguments: alpha must be irrational")
        if not (0 < alpha < 1):
            raise ValueError("invalid arguments: alpha must lie in (0, 1)")
        if not (0 <= y < 1):
            raise ValueError("invalid arguments: y must lie in [0, 1)")
        if not y.is_rational and y.D != alpha.D:
            raise ValueError("unsupported: y and alpha must share one quadratic field")


@dataclass(frozen=True)
class LineParams:
    x: tuple[QuadraticReal, QuadraticReal]
    theta: tuple[QuadraticReal, QuadraticReal]

    def __post_init__(self):
        x = tuple(qr(c) for c in self.x)
        theta = tuple(qr(c) for c in self.theta)
        if len(x) != 2 or len(theta) != 2:
            raise ValueError("invalid arguments: x and theta are pairs")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "theta", theta)
        if not all(0 <= c < 1 for c in x):
            raise ValueError("invalid arguments: x must lie in [0, 1)^2")
        if not all(t > 0 for t in theta):
            raise ValueError("invalid arguments: theta must have positive components")

    @property
    def slope_rational(self) -> bool:
        return (self.theta[1] / self.theta[0]).is_rational

    def rotation(self) -> RotationParams:
        """Rotation parameters whose coding equals the coding of this line."""
        t1, t2 = self.theta
        return RotationParams(projected_start(self), t2 / (t1 + t2))


def _refuse_rational_slope(p: LineParams) -> None:
    # checked after the exact event loop so that grid hits are reported as such
    if p.slope_rational:
        raise ValueError("invalid arguments: rational slope gives a periodic, non-Sturmian coding")


def rotation_stream(p: RotationParams) -> WordStream:
    """Letter ``k`` is 1 iff ``{y + (k-1) alpha}`` lies in ``[0, 1 - alpha)``."""
    alpha = p.alpha

    def letters():
        z = p.y
        while True:
            z = z + alpha
            # z + alpha < 1 is the same test as z in [0, 1 - alpha)
            if z < 1:
                yield 1
            else:
                z = z - 1
                yield 2

    return WordStream(letters, BINARY, f"rotation[y={p.y}, alpha={p.alpha}]")


def rotation_word(p: RotationParams, n: int) -> FiniteWord:
    if n < 0:
        raise ValueError("invalid arguments: n must be >= 0")
    return rotation_stream(p).prefix(n)


def cutting_sequence(p: LineParams, n: int) -> FiniteWord:
    """Crossings of ``x + t*theta`` (``t > 0``) with the integer grid.

    A crossing of a vertical line ``x1 = k`` gives 1 and a horizontal line
    ``x2 = k`` gives 2.  The next vertical crossing happens before the next
    horizontal one iff ``(kv - x1) * theta2 < (kh - x2) * theta1``; equality
    means the line meets a grid point.
    """
    (x1, x2), (t1, t2) = p.x, p.theta
    kv = qr_floor(x1) + 1
    kh = qr_floor(x2) + 1
    out = []
    while len(out) < n:
        c = ((kv - x1) * t2 - (kh - x2) * t1).sign()
        if c == 0:
            raise DegenerateTrajectoryError(f"line meets the grid point ({kv}, {kh})")
        if c < 0:
            out.append(1)
            kv += 1
        else:
            out.append(2)
            kh += 1
    _refuse_rational_slope(p)
    return FiniteWord(tuple(out), BINARY)


def billiard_word(p: LineParams, n: int) -> FiniteWord:
    """Bounces of a ball in the unit square, by explicit reflection.

    Hitting a vertical side gives 1, a horizontal side gives 2.
    """
    (px, py), (t1, t2) = p.x, p.theta
    sx = sy = 1  # direction signs
    out = []
    while len(out) < n:
        dist_x = 1 - px if sx > 0 else px
        dist_y = 1 - py if sy > 0 else py
        # time to the vertical side is dist_x / t1, to the horizontal one dist_y / t2
        c = (dist_x * t2 - dist_y * t1).sign()
        if c == 0:
            raise DegenerateTrajectoryError("ball hits a corner of the table")
        if c < 0:
            t = dist_x / t1
            px = QuadraticReal(1 if sx > 0 else 0)
            py = py + sy * t * t2
            sx = -sx
            out.append(1)
        else:
            t = dist_y / t2
            py = QuadraticReal(1 if sy > 0 else 0)
            px = px + sx * t * t1
            sy = -sy
            out.append(2)
    _refuse_rational_slope(p)
    return FiniteWord(tuple(out), BINARY)


def flow_word(p: LineParams, n: int) -> FiniteWord:
    """Linear flow on the torus ``R^2 / Z^2``: 1 for the vertical side, 2 for the horizontal."""
    (px, py), (t1, t2) = p.x, p.theta
    out = []
    while len(out) < n:
        c = ((1 - px) * t2 - (1 - py) * t1).sign()
        if c == 0:
            raise DegenerateTrajectoryError("flow line goes through the corner of the torus")
        if c < 0:
            py = py + (1 - px) * t2 / t1
            px = QuadraticReal(0)
            out.append(1)
        else:
            px = px + (1 - py) * t1 / t2
            py = QuadraticReal(0)
            out.append(2)
    _refuse_rational_slope(p)
    return FiniteWord(tuple(out), BINARY)


def projected_start(p: LineParams) -> QuadraticReal:
    """Starting point ``y`` of the rotation coding the line through ``x``.

    Along the line the quantity ``z = (theta1*x2 - theta2*x1) / (theta1 + theta2)``
    is constant; the first crossing of a grid line sits at rotation parameter
    ``{z + alpha}`` with ``alpha = theta2 / (theta1 + theta2)``.  For ``x = 0``
    this is ``alpha`` itself.
    """
    (x1, x2), (t1, t2) = p.x, p.theta
    s = t1 + t2
    z = (t1 * x2 - t2 * x1) / s
    return (z + t2 / s).fractional_part()


def rotation_cylinders(alpha: QuadraticReal, m: int) -> dict[FiniteWord, QuadraticReal]:
    """Exact measure of every length-``m`` cylinder of the rotation coding.

    The coding of ``z, z + alpha, ...`` changes only at the points
    ``{-j alpha}``, ``0 <= j <= m``; between consecutive breakpoints it is
    constant, so each factor's measure is a sum of interval lengths.  By
    unique ergodicity these are the factor frequencies of every rotation word.
    """
    alpha = qr(alpha)
    if m < 0:
        raise ValueError("invalid arguments: m must be >= 0")
    points = sorted({(-j * alpha).fractional_part() for j in range(m + 1)})
    points.append(QuadraticReal(1))
    out: dict[FiniteWord, QuadraticReal] = {}
    for lo, hi in zip(points, points[1:]):
        z, letters = lo, []
        for _ in range(m):
            z = z + alpha
            if z < 1:
                letters.append(1)
            else:
                z = z - 1
                letters.append(2)
        u = FiniteWord(tuple(letters), BINARY)
        out[u] = out.get(u, QuadraticReal(0)) + (hi - lo)
    return out


def _billiard_points(p: LineParams, bounces: int) -> tuple[list[tuple[float, float]], list[int]]:
    (px, py), (t1, t2) = p.x, p.theta
    sx = sy = 1
    pts = [(float(px), float(py))]
    letters = []
    for _ in range(bounces):
        dist_x = 1 - px if sx > 0 else px
        dist_y = 1 - py if sy > 0 else py
        c = (dist_x * t2 - dist_y * t1).sign()
        if c == 0:
            raise DegenerateTrajectoryError("ball hits a corner of the table")
        if c < 0:
            t = dist_x / t1
            px, py = QuadraticReal(1 if sx > 0 else 0), py + sy * t * t2
            sx = -sx
            letters.append(1)
        else:
            t = dist_y / t2
            px, py = px + sx * t * t1, QuadraticReal(1 if sy > 0 else 0)
            sy = -sy
            letters.append(2)
        pts.append((float(px), float(py)))
    return pts, letters


def render_trajectory_svg(p: LineParams, bounces: int, size: int = 512) -> str:
    """SVG drawing of the billiard trajectory, one segment per bounce.

    A rational slope is drawn but not labelled as a Sturmian coding; corner
    hits raise :class:`DegenerateTrajectoryError`.
    """
    if bounces < 0:
        raise ValueError("invalid arguments: bounces must be >= 0")
    pts, letters = _billiard_points(p, bounces)
    margin = 16
    side = size - 2 * margin

    def xy(pt):
        return margin + pt[0] * side, margin + (1 - pt[1]) * side

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'  <rect x="{margin}" y="{margin}" width="{side}" height="{side}" '
        'fill="none" stroke="black" stroke-width="2"/>',
    ]
    coords = " ".join(f"{a:.3f},{b:.3f}" for a, b in map(xy, pts)) if bounces else ""
    lines.append(f'  <polyline points="{coords}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
    for pt, a in zip(pts[1:], letters):
        cx, cy = xy(pt)
        lines.append(f'  <text x="{cx:.3f}" y="{cy:.3f}" font-size="12" fill="none" '
                     f'stroke="darkred" stroke-width="0.6">{escape(str(a))}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
