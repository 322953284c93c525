"""Shared geometry builders for the test suite."""

from __future__ import annotations

import math

from beziertrace.bezier_core import CubicBezier, Point2, evaluate
from beziertrace.contour import Contour, RasterImage


def image_from_bits(width, height, filled) -> RasterImage:
    bits = bytearray(width * height)
    for x, y in filled:
        bits[y * width + x] = 1
    return RasterImage(width, height, bits)


def filled_rect_image(width, height, x0, y0, x1, y1) -> RasterImage:
    """Axis-aligned filled rectangle, corners inclusive."""
    bits = bytearray(width * height)
    for y in range(y0, y1 + 1):
        row = y * width
        for x in range(x0, x1 + 1):
            bits[row + x] = 1
    return RasterImage(width, height, bits)


def rect_with_hole_image():
    img = filled_rect_image(20, 16, 2, 2, 17, 13)
    for y in range(6, 9):
        for x in range(8, 11):
            img.bits[y * 20 + x] = 0
    return img


def circle_image(r=50, pad=8) -> RasterImage:
    """Filled lattice disk: (x-c)^2 + (y-c)^2 <= r^2."""
    size = 2 * r + 2 * pad + 1
    c = pad + r
    bits = bytearray(size * size)
    rr = r * r
    for y in range(size):
        row = y * size
        dy2 = (y - c) ** 2
        for x in range(size):
            if (x - c) ** 2 + dy2 <= rr:
                bits[row + x] = 1
    return RasterImage(size, size, bits)


# The canonical sharp-cornered test shape: the region between two mirrored
# chord-aligned cubics joined at two lattice corners.  Heights are chosen so
# the tip wedge opens wider than 90 degrees (no one-pixel whiskers) and the
# apex row is a run rather than a lone pixel.
LENS_SIZE = 400
LENS_CORNERS = ((70, 200), (330, 200))
LENS_HEIGHT = 101


def lens_image() -> RasterImage:
    (ax, cy), (bx, _) = LENS_CORNERS
    chord = bx - ax
    h = LENS_HEIGHT
    bits = bytearray(LENS_SIZE * LENS_SIZE)
    for x in range(ax, bx + 1):
        u = (x - ax) / chord
        w = 3.0 * h * u * (1.0 - u)
        for y in range(math.ceil(cy - w), math.floor(cy + w) + 1):
            bits[y * LENS_SIZE + x] = 1
    return RasterImage(LENS_SIZE, LENS_SIZE, bits)


def star_polygon(rng, cx=85.0, cy=85.0, k=None, rmin=28.0, rmax=60.0):
    """Random simple polygon: vertices at jittered angles around a center."""
    k = k if k is not None else rng.randint(5, 10)
    verts = []
    for i in range(k):
        ang = 2.0 * math.pi * (i + 0.15 + 0.7 * rng.random()) / k
        rad = rng.uniform(rmin, rmax)
        verts.append((cx + rad * math.cos(ang) + 0.217,
                      cy + rad * math.sin(ang) + 0.391))
    return verts


def rasterize_polygon(verts, width, height) -> RasterImage:
    """Even-odd scanline fill over lattice points."""
    bits = bytearray(width * height)
    k = len(verts)
    for y in range(height):
        xs = []
        for i in range(k):
            x1, y1 = verts[i]
            x2, y2 = verts[(i + 1) % k]
            if (y1 <= y < y2) or (y2 <= y < y1):
                xs.append(x1 + (y - y1) * (x2 - x1) / (y2 - y1))
        xs.sort()
        row = y * width
        for a, b in zip(xs[::2], xs[1::2]):
            for x in range(math.ceil(a), math.floor(b) + 1):
                if 0 <= x < width:
                    bits[row + x] = 1
    return RasterImage(width, height, bits)


def chord_aligned_cubic(a: Point2, b: Point2, h1: float, h2: float) -> CubicBezier:
    """Cubic whose interior controls sit at chord thirds, offset sideways."""
    dx, dy = b.x - a.x, b.y - a.y
    length = math.hypot(dx, dy)
    nx, ny = -dy / length, dx / length
    return CubicBezier(
        a,
        Point2(a.x + dx / 3.0 + h1 * nx, a.y + dy / 3.0 + h1 * ny),
        Point2(a.x + 2.0 * dx / 3.0 + h2 * nx, a.y + 2.0 * dy / 3.0 + h2 * ny),
        b,
    )


def uniform_samples(c: CubicBezier, n: int) -> list[Point2]:
    return [evaluate(c, i / (n - 1)) for i in range(n)]


def closed_two_cubic_contour(c_upper: CubicBezier, c_lower: CubicBezier,
                             n_per: int) -> Contour:
    """Closed loop from two curve halves sharing endpoints (continuous)."""
    pts = uniform_samples(c_upper, n_per) + uniform_samples(c_lower, n_per)[1:-1]
    return Contour(list(pts))


def boundary_pixel_set(img: RasterImage) -> set[tuple[int, int]]:
    """Object pixels with a background 4-neighbor or on the image edge."""
    out = set()
    for y in range(img.height):
        for x in range(img.width):
            if not img.at(x, y):
                continue
            if (x in (0, img.width - 1) or y in (0, img.height - 1)
                    or not img.at(x + 1, y) or not img.at(x - 1, y)
                    or not img.at(x, y + 1) or not img.at(x, y - 1)):
                out.add((x, y))
    return out


def pixels_adjacent_to(img: RasterImage, region: set[tuple[int, int]]):
    """Object pixels 4-adjacent to any pixel of the given background set."""
    out = set()
    for (x, y) in region:
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            if img.at(x + dx, y + dy):
                out.add((x + dx, y + dy))
    return out


def pbm_plain_bytes(img: RasterImage) -> bytes:
    rows = []
    for y in range(img.height):
        rows.append(" ".join(str(img.bits[y * img.width + x])
                             for x in range(img.width)))
    return (f"P1\n{img.width} {img.height}\n" + "\n".join(rows) + "\n").encode()


def pbm_raw_bytes(img: RasterImage) -> bytes:
    stride = (img.width + 7) // 8
    out = bytearray(f"P4\n{img.width} {img.height}\n".encode())
    for y in range(img.height):
        row = bytearray(stride)
        for x in range(img.width):
            if img.bits[y * img.width + x]:
                row[x >> 3] |= 0x80 >> (x & 7)
        out.extend(row)
    return bytes(out)


def rotate_contour(c: Contour, shift: int) -> Contour:
    n = c.n
    return Contour([c.points[(i + shift) % n] for i in range(n)])


def convex_hull(points):
    """Monotone-chain hull, counterclockwise."""
    pts = sorted(set((p[0], p[1]) for p in points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def point_in_hull(p, hull, tol=1e-9) -> bool:
    """Point containment in a counterclockwise convex polygon."""
    if len(hull) == 1:
        return abs(p[0] - hull[0][0]) <= tol and abs(p[1] - hull[0][1]) <= tol
    if len(hull) == 2:
        (ax, ay), (bx, by) = hull
        cross = (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax)
        dot = (p[0] - ax) * (bx - ax) + (p[1] - ay) * (by - ay)
        d2 = (bx - ax) ** 2 + (by - ay) ** 2
        return abs(cross) <= tol * math.sqrt(d2) and -tol <= dot <= d2 + tol
    for i in range(len(hull)):
        ax, ay = hull[i]
        bx, by = hull[(i + 1) % len(hull)]
        if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) < -tol * math.hypot(bx - ax, by - ay):
            return False
    return True
