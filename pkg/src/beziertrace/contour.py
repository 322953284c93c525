"""Binary raster ingestion and boundary tracing into closed pixel loops.

Input images are 1-bit portable bitmaps (plain ``P1`` or raw ``P4``); traced
loops are exchanged through a small JSON document, see ``write_contour``.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field

from .bezier_core import Point2
from .errors import FormatError

log = logging.getLogger(__name__)

# Moore neighborhood in clockwise screen order (y grows downward), E first.
_CW8 = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))
_CW8_INDEX = {d: i for i, d in enumerate(_CW8)}
_N4 = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass
class RasterImage:
    """Row-major binary occupancy grid; 1 = object, 0 = background."""

    width: int
    height: int
    bits: bytearray

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise FormatError(f"bad image dimensions {self.width}x{self.height}")
        if len(self.bits) != self.width * self.height:
            raise FormatError(
                f"bit count {len(self.bits)} does not match "
                f"{self.width}x{self.height}"
            )

    def at(self, x: int, y: int) -> bool:
        """Object test; coordinates outside the grid read as background."""
        if 0 <= x < self.width and 0 <= y < self.height:
            return bool(self.bits[y * self.width + x])
        return False


@dataclass
class Contour:
    """One closed 8-connected pixel loop.

    Points are stored in traversal order; the loop closes from the last
    point back to the first.  Outer boundaries carry positive shoelace area
    under the stored (x, y) coordinates, holes negative.
    """

    points: list[Point2] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.points)

    def signed_area(self) -> float:
        pts = self.points
        total = 0.0
        for i, p in enumerate(pts):
            q = pts[(i + 1) % len(pts)]
            total += p.x * q.y - q.x * p.y
        return 0.5 * total


@dataclass
class ContourDocument:
    """Traced loops of one image plus the image dimensions."""

    width: int
    height: int
    contours: list[Contour] = field(default_factory=list)


# --------------------------- portable bitmap input ---------------------------


class _Scanner:
    """Byte cursor with PBM whitespace/comment skipping and offset reporting."""

    _WS = b" \t\r\n\x0b\x0c"

    def __init__(self, data: bytes, path: str):
        self.data = data
        self.pos = 0
        self.path = path

    def error(self, message: str, offset: int | None = None) -> FormatError:
        return FormatError(message, path=self.path,
                           offset=self.pos if offset is None else offset)

    def skip_separators(self) -> None:
        data = self.data
        while self.pos < len(data):
            c = data[self.pos]
            if c in self._WS:
                self.pos += 1
            elif c == 0x23:  # '#' comment runs to end of line
                nl = data.find(b"\n", self.pos)
                self.pos = len(data) if nl < 0 else nl + 1
            else:
                break

    def read_int(self, what: str) -> int:
        self.skip_separators()
        start = self.pos
        data = self.data
        while self.pos < len(data) and 0x30 <= data[self.pos] <= 0x39:
            self.pos += 1
        if self.pos == start:
            raise self.error(f"expected {what}", offset=start)
        return int(data[start:self.pos])


def load_image(path: str, format: str = "auto") -> RasterImage:
    """Read a 1-bit portable bitmap (plain or raw); 1/black is the object."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read image: {exc}", path=str(path)) from exc

    sc = _Scanner(data, str(path))
    magic = data[:2]
    if magic not in (b"P1", b"P4"):
        raise sc.error(f"not a portable bitmap (magic {magic!r})", offset=0)
    kind = "plain" if magic == b"P1" else "raw"
    if format not in ("auto", "plain", "raw"):
        raise FormatError(f"unknown format hint {format!r}", path=str(path))
    if format != "auto" and format != kind:
        raise sc.error(f"expected a {format} bitmap but found {kind}", offset=0)
    sc.pos = 2

    width = sc.read_int("width")
    height = sc.read_int("height")
    if width <= 0 or height <= 0:
        raise sc.error(f"bad dimensions {width}x{height}")
    bits = bytearray(width * height)

    if kind == "plain":
        count = 0
        total = width * height
        while count < total:
            sc.skip_separators()
            if sc.pos >= len(data):
                raise sc.error(f"truncated raster: {count} of {total} pixels")
            c = data[sc.pos]
            if c == 0x31:
                bits[count] = 1
            elif c != 0x30:
                raise sc.error(f"unexpected raster byte {chr(c)!r}")
            count += 1
            sc.pos += 1
        sc.skip_separators()
        if sc.pos != len(data):
            raise sc.error("trailing data after raster")
    else:
        # exactly one separator byte after the header, then packed rows
        if sc.pos >= len(data) or data[sc.pos] not in _Scanner._WS:
            raise sc.error("expected whitespace before raw raster")
        sc.pos += 1
        stride = (width + 7) // 8
        need = stride * height
        if len(data) - sc.pos < need:
            raise sc.error(
                f"truncated raster: need {need} bytes, have {len(data) - sc.pos}",
                offset=len(data))
        if len(data) - sc.pos > need:
            raise sc.error("trailing data after raster", offset=sc.pos + need)
        base = sc.pos
        for y in range(height):
            row = base + y * stride
            for x in range(width):
                byte = data[row + (x >> 3)]
                if (byte >> (7 - (x & 7))) & 1:
                    bits[y * width + x] = 1
    return RasterImage(width, height, bits)


# ------------------------------ boundary tracing -----------------------------


def _next_boundary_pixel(img, cur, back):
    """Clockwise Moore scan around cur starting after back.

    Returns the next object pixel and the background pixel scanned just
    before it (the new backtrack), or (None, None) for an isolated pixel.
    """
    cx, cy = cur
    start = _CW8_INDEX[(back[0] - cx, back[1] - cy)]
    prev = back
    for step in range(1, 9):
        dx, dy = _CW8[(start + step) % 8]
        cand = (cx + dx, cy + dy)
        if img.at(*cand):
            return cand, prev
        prev = cand
    return None, None


def _moore_trace(img, start, backtrack):
    """Follow one boundary loop from start; stops on Jacob's criterion
    (re-entering the start pixel from the original backtrack)."""
    loop = [start]
    first_state = (start, backtrack)
    seen = {first_state}
    cur, back = start, backtrack
    while True:
        nxt, nb = _next_boundary_pixel(img, cur, back)
        if nxt is None:
            return loop
        state = (nxt, nb)
        if state == first_state:
            return loop
        if state in seen:  # safety net; validation rejects the loop if broken
            return loop
        seen.add(state)
        loop.append(nxt)
        cur, back = nxt, nb


def _loop_violation(points) -> str | None:
    """First closed-loop invariant the pixel list breaks, or None."""
    n = len(points)
    if n < 4:
        return f"loop has {n} points, need at least 4"
    if len(set(points)) != n:
        return "loop revisits a pixel"
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        if max(abs(a[0] - b[0]), abs(a[1] - b[1])) != 1:
            return f"points {a} and {b} are not 8-neighbors"
    return None


def _flood(bits, width, height, want, neighbors):
    """Label connected components of pixels whose object-ness equals want;
    returns the component seeds (row-major first pixels) and the label grid."""
    labels = [-1] * (width * height)
    seeds = []
    for idx in range(width * height):
        if labels[idx] >= 0 or bool(bits[idx]) != want:
            continue
        label = len(seeds)
        seeds.append((idx % width, idx // width))
        labels[idx] = label
        queue = deque([idx])
        while queue:
            at = queue.popleft()
            px = at % width
            py = at // width
            for dx, dy in neighbors:
                qx = px + dx
                qy = py + dy
                if 0 <= qx < width and 0 <= qy < height:
                    qidx = qy * width + qx
                    if labels[qidx] < 0 and bool(bits[qidx]) == want:
                        labels[qidx] = label
                        queue.append(qidx)
    return seeds, labels


def trace_boundaries(img: RasterImage) -> list[Contour]:
    """Trace every outer and hole boundary of the object pixels.

    Moore-neighbor tracing with Jacob's stopping criterion; the object is
    8-connected, the background 4-connected.  Loops are returned ordered by
    the (row, column) of their topmost-leftmost pixel; outer loops are
    oriented to positive shoelace area and holes to negative.  Regions whose
    boundary cannot form a valid loop (single pixels, one-pixel-wide
    features that force a pixel to repeat) are dropped with a warning.
    """
    w, h = img.width, img.height

    obj_seeds, _ = _flood(img.bits, w, h, True, _CW8)
    bg_seeds, bg_labels = _flood(img.bits, w, h, False, _N4)
    touches_border = [False] * len(bg_seeds)
    for y in range(h):
        for x in (0, w - 1):
            lbl = bg_labels[y * w + x]
            if lbl >= 0:
                touches_border[lbl] = True
    for x in range(w):
        for y in (0, h - 1):
            lbl = bg_labels[y * w + x]
            if lbl >= 0:
                touches_border[lbl] = True

    raw: list[tuple[list[tuple[int, int]], bool]] = []  # (pixels, is_hole)
    for sx, sy in obj_seeds:
        # west of the topmost-leftmost component pixel is never object
        raw.append((_moore_trace(img, (sx, sy), (sx - 1, sy)), False))
    for lbl, (sx, sy) in enumerate(bg_seeds):
        if touches_border[lbl]:
            continue
        # the pixel above a hole's topmost-leftmost pixel is object
        raw.append((_moore_trace(img, (sx, sy - 1), (sx, sy)), True))

    contours: list[tuple[tuple, Contour]] = []
    for seq, (pixels, is_hole) in enumerate(raw):
        problem = _loop_violation(pixels)
        if problem is not None:
            if len(pixels) > 1:
                log.warning("dropping %s boundary at %s: %s",
                            "hole" if is_hole else "outer", pixels[0], problem)
            continue
        contour = Contour([Point2(float(x), float(y)) for x, y in pixels])
        area = contour.signed_area()
        if (area < 0.0) != is_hole:
            head = contour.points[0]
            contour.points = [head] + contour.points[:0:-1]
        min_y = min(p[1] for p in pixels)
        min_x = min(p[0] for p in pixels if p[1] == min_y)
        contours.append(((min_y, min_x, int(is_hole), seq), contour))

    contours.sort(key=lambda item: item[0])
    return [c for _, c in contours]


# ------------------------------ contour documents ----------------------------


def write_contour(path: str, doc: ContourDocument) -> None:
    """Write traced loops as a canonical JSON document."""
    payload = {
        "width": doc.width,
        "height": doc.height,
        "contours": [
            {"closed": True, "points": [[int(p.x), int(p.y)] for p in c.points]}
            for c in doc.contours
        ],
    }
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text + "\n")


def read_contour(path: str) -> ContourDocument:
    """Read and validate a contour document written by ``write_contour``."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read contours: {exc}", path=str(path)) from exc
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"not valid JSON: {exc}", path=str(path)) from exc

    def fail(field_name: str, message: str) -> FormatError:
        return FormatError(f"{field_name}: {message}", path=str(path))

    if not isinstance(payload, dict):
        raise fail("document", "expected a JSON object")
    for key in ("width", "height", "contours"):
        if key not in payload:
            raise fail(key, "missing field")
    width, height = payload["width"], payload["height"]
    if not isinstance(width, int) or width <= 0:
        raise fail("width", f"expected a positive integer, got {width!r}")
    if not isinstance(height, int) or height <= 0:
        raise fail("height", f"expected a positive integer, got {height!r}")
    if not isinstance(payload["contours"], list):
        raise fail("contours", "expected a list")

    contours = []
    for ci, entry in enumerate(payload["contours"]):
        where = f"contours[{ci}]"
        if not isinstance(entry, dict):
            raise fail(where, "expected an object")
        if entry.get("closed") is not True:
            raise fail(f"{where}.closed", "must be true")
        pts_raw = entry.get("points")
        if not isinstance(pts_raw, list):
            raise fail(f"{where}.points", "expected a list")
        pixels = []
        for pi, pair in enumerate(pts_raw):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(v, int) and not isinstance(v, bool)
                               for v in pair)):
                raise fail(f"{where}.points[{pi}]",
                           f"expected an [x, y] integer pair, got {pair!r}")
            pixels.append((pair[0], pair[1]))
        problem = _loop_violation(pixels)
        if problem is not None:
            raise fail(f"{where}.points", problem)
        contours.append(Contour([Point2(float(x), float(y)) for x, y in pixels]))
    return ContourDocument(width, height, contours)
