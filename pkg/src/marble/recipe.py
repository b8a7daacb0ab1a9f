"""Line-oriented recipe language (``.mbl``).

A recipe names a viewport, a base pattern, an ordered list of deformation
steps and an output path::

    version 1
    viewport -0.1 -0.1 0.2 0.2 400 400
    base half x #000000 #ffffff
    vortex 0 0 2.5e-5 1e-6 600
    render yinyang.ppm supersample 2

``#`` starts a comment, except where the grammar expects a color.  All
values are SI.  Parse failures raise :class:`ParseError` carrying a stable
diagnostic code and a 1-based line and column.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .raster import (
    SUPERSAMPLE_CHOICES,
    BasePattern,
    Checker,
    HalfPlane,
    Rings,
    Solid,
    Stripes,
    Viewport,
)
from .vortexmath import VortexParams
from .xform import RGB, CircleStroke, Deformation, Drop, LineStroke, Scene, Vortex

FORMAT_VERSION = 1

# diagnostic codes
UNKNOWN_KEYWORD = "E01"
ARITY = "E02"
BAD_NUMBER = "E03"
NON_FINITE = "E04"
NON_POSITIVE = "E05"
BAD_COLOR = "E06"
BAD_INTEGER = "E07"
ZERO_DIRECTION = "E08"
NEGATIVE_TIME = "E09"
DUPLICATE = "E10"
MISSING_VIEWPORT = "E11"
MISSING_BASE = "E12"
MISSING_RENDER = "E13"
BAD_SUPERSAMPLE = "E14"
BAD_VERSION = "E15"
NON_SQUARE = "E16"
BAD_AXIS = "E17"
BAD_ENCODING = "E18"
BAD_BASE_KIND = "E19"

CODES = {
    UNKNOWN_KEYWORD: "unknown keyword",
    ARITY: "wrong number of arguments",
    BAD_NUMBER: "malformed number",
    NON_FINITE: "non-finite number",
    NON_POSITIVE: "value must be positive",
    BAD_COLOR: "malformed color",
    BAD_INTEGER: "malformed integer",
    ZERO_DIRECTION: "zero direction vector",
    NEGATIVE_TIME: "negative time",
    DUPLICATE: "duplicate declaration",
    MISSING_VIEWPORT: "missing viewport",
    MISSING_BASE: "missing base",
    MISSING_RENDER: "missing render",
    BAD_SUPERSAMPLE: "unsupported supersample factor",
    BAD_VERSION: "unsupported or misplaced version",
    NON_SQUARE: "viewport pixels are not square",
    BAD_AXIS: "half-plane axis must be x or y",
    BAD_ENCODING: "input is not valid UTF-8",
    BAD_BASE_KIND: "unknown base pattern",
}


class ParseError(ValueError):
    def __init__(self, code: str, message: str, line: int, col: int):
        self.code = code
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"{line}:{col}: {code} {message}")


@dataclass(frozen=True)
class Recipe:
    viewport: Viewport
    base: BasePattern
    steps: tuple[Deformation, ...]
    output: str
    supersample: int = 1
    version: int | None = None

    def scene(self) -> Scene:
        return Scene(self.base.colors[0], self.steps)


_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INTEGER = re.compile(r"\d+")
_COLOR = re.compile(r"#[0-9a-fA-F]{6}")
_TOKEN = re.compile(r"\S+")

# argument kinds
NUM, POS, TIME, INT, COLOR, AXIS, PATH = "num", "pos", "time", "int", "color", "axis", "path"

_STEP_SIGS = {
    "vortex": (NUM, NUM, NUM, POS, TIME),
    "line": (NUM, NUM, NUM, NUM, NUM, POS),
    "circle": (NUM, NUM, POS, NUM, POS),
    "drop": (NUM, NUM, POS, COLOR),
}
_BASE_SIGS = {
    "solid": (COLOR,),
    "half": (AXIS, COLOR, COLOR),
    "stripes": (POS, NUM, COLOR, COLOR),
    "rings": (NUM, NUM, POS, COLOR, COLOR),
    "checker": (POS, COLOR, COLOR),
}
_VIEWPORT_SIG = (NUM, NUM, POS, POS, INT, INT)


class _Line:
    __slots__ = ("no", "tokens")

    def __init__(self, no, text):
        self.no = no
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]


def _convert(kind, tok, lineno, col):
    if kind == COLOR:
        if not _COLOR.fullmatch(tok):
            raise ParseError(BAD_COLOR, f"expected #rrggbb, got {tok!r}", lineno, col)
        return tuple(int(tok[i:i + 2], 16) for i in (1, 3, 5))
    if kind == AXIS:
        if tok not in ("x", "y"):
            raise ParseError(BAD_AXIS, f"expected x or y, got {tok!r}", lineno, col)
        return tok
    if kind == PATH:
        return tok
    if kind == INT:
        if not _INTEGER.fullmatch(tok) or len(tok) > 9:
            raise ParseError(BAD_INTEGER, f"expected integer below 1e9, got {tok!r}", lineno, col)
        v = int(tok)
        if v < 1:
            raise ParseError(NON_POSITIVE, f"expected positive integer, got {tok}", lineno, col)
        return v
    if not _NUMBER.fullmatch(tok):
        raise ParseError(BAD_NUMBER, f"expected number, got {tok!r}", lineno, col)
    v = float(tok)
    if not math.isfinite(v):
        raise ParseError(NON_FINITE, f"{tok!r} overflows to a non-finite value", lineno, col)
    if kind == POS and not v > 0:
        raise ParseError(NON_POSITIVE, f"expected positive value, got {tok}", lineno, col)
    if kind == TIME and v < 0:
        raise ParseError(NEGATIVE_TIME, f"time must be >= 0, got {tok}", lineno, col)
    return v


def _args(line: _Line, start: int, sig, keyword: str, optional_tail=False):
    """Convert ``line.tokens[start:]`` against ``sig``; trailing ``#...``
    is a comment.  Returns (values, index of the first unused token)."""
    toks = line.tokens
    values = []
    i = start
    for kind in sig:
        if i >= len(toks) or (kind != COLOR and toks[i][0].startswith("#")):
            col = toks[i][1] if i < len(toks) else _end_col(line)
            raise ParseError(ARITY, f"{keyword} expects {len(sig)} arguments, got {i - start}",
                             line.no, col)
        tok, col = toks[i]
        values.append(_convert(kind, tok, line.no, col))
        i += 1
    if not optional_tail and i < len(toks) and not toks[i][0].startswith("#"):
        raise ParseError(ARITY, f"{keyword} expects {len(sig)} arguments, got more",
                         line.no, toks[i][1])
    return values, i


def _end_col(line: _Line) -> int:
    if not line.tokens:
        return 1
    tok, col = line.tokens[-1]
    return col + len(tok)


def _build_step(keyword, vals, line, col) -> Deformation:
    if keyword == "vortex":
        cx, cy, gamma, nu, t = vals
        return Vortex(VortexParams(gamma, nu, t, (cx, cy)))
    if keyword == "line":
        ox, oy, dx, dy, z, lam = vals
        if dx == 0 and dy == 0:
            raise ParseError(ZERO_DIRECTION, "line direction is the zero vector", line, col)
        if not math.isfinite(math.hypot(dx, dy)):
            raise ParseError(NON_FINITE, "line direction overflows", line, col)
        return LineStroke((ox, oy), (dx, dy), z, lam)
    if keyword == "circle":
        cx, cy, radius, z, lam = vals
        return CircleStroke((cx, cy), radius, z, lam)
    cx, cy, rho, color = vals
    return Drop((cx, cy), rho, color)


def _build_base(kind, vals) -> BasePattern:
    if kind == "solid":
        return Solid(vals[0])
    if kind == "half":
        return HalfPlane(*vals)
    if kind == "stripes":
        return Stripes(*vals)
    if kind == "rings":
        cx, cy, period, c1, c2 = vals
        return Rings((cx, cy), period, c1, c2)
    return Checker(*vals)


def parse(text: str | bytes) -> Recipe:
    """Parse recipe text.  Total: any input yields a Recipe or ParseError."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = bytes(text)[: exc.start]
            line = prefix.count(b"\n") + 1
            col = exc.start - (prefix.rfind(b"\n") + 1) + 1
            raise ParseError(BAD_ENCODING, str(exc.reason), line, col) from None
    viewport = base = output = None
    supersample = 1
    version = None
    steps = []
    seen_content = False
    last_line = 1
    for no, raw in enumerate(text.split("\n"), start=1):
        last_line = no
        line = _Line(no, raw)
        if not line.tokens or line.tokens[0][0].startswith("#"):
            continue
        kw, col = line.tokens[0]
        if kw == "version":
            if seen_content:
                raise ParseError(BAD_VERSION, "version must be the first statement", no, col)
            (v,), _ = _args(line, 1, (INT,), kw)
            if v != FORMAT_VERSION:
                raise ParseError(BAD_VERSION, f"unsupported version {v}", no, line.tokens[1][1])
            version = v
            seen_content = True
            continue
        seen_content = True
        if kw in _STEP_SIGS:
            vals, _ = _args(line, 1, _STEP_SIGS[kw], kw)
            steps.append(_build_step(kw, vals, no, col))
        elif kw == "viewport":
            if viewport is not None:
                raise ParseError(DUPLICATE, "viewport declared twice", no, col)
            vals, _ = _args(line, 1, _VIEWPORT_SIG, kw)
            try:
                viewport = Viewport(*vals)
            except ValueError as exc:
                raise ParseError(NON_SQUARE, str(exc), no, col) from None
        elif kw == "base":
            if base is not None:
                raise ParseError(DUPLICATE, "base declared twice", no, col)
            if len(line.tokens) < 2 or line.tokens[1][0].startswith("#"):
                raise ParseError(ARITY, "base needs a pattern kind", no, _end_col(line))
            kind, kcol = line.tokens[1]
            if kind not in _BASE_SIGS:
                raise ParseError(BAD_BASE_KIND, f"unknown base pattern {kind!r}", no, kcol)
            vals, _ = _args(line, 2, _BASE_SIGS[kind], f"base {kind}")
            base = _build_base(kind, vals)
        elif kw == "render":
            if output is not None:
                raise ParseError(DUPLICATE, "render declared twice", no, col)
            (path,), i = _args(line, 1, (PATH,), kw, optional_tail=True)
            toks = line.tokens
            if i < len(toks) and not toks[i][0].startswith("#"):
                if toks[i][0] != "supersample":
                    raise ParseError(ARITY, f"unexpected {toks[i][0]!r} after render path",
                                     no, toks[i][1])
                (n,), _ = _args(line, i + 1, (INT,), "supersample")
                if n not in SUPERSAMPLE_CHOICES:
                    raise ParseError(BAD_SUPERSAMPLE,
                                     f"supersample must be one of {SUPERSAMPLE_CHOICES}",
                                     no, toks[i + 1][1])
                supersample = n
            output = path
        else:
            raise ParseError(UNKNOWN_KEYWORD, f"unknown keyword {kw!r}", no, col)
    end = last_line
    if viewport is None:
        raise ParseError(MISSING_VIEWPORT, "recipe has no viewport line", end, 1)
    if base is None:
        raise ParseError(MISSING_BASE, "recipe has no base line", end, 1)
    if output is None:
        raise ParseError(MISSING_RENDER, "recipe has no render line", end, 1)
    return Recipe(viewport, base, tuple(steps), output, supersample, version)


def _num(v: float) -> str:
    return repr(float(v))


def _color(c: RGB) -> str:
    return "#%02x%02x%02x" % tuple(c)


def format_base(b: BasePattern) -> str:
    if isinstance(b, Solid):
        return f"base solid {_color(b.color)}"
    if isinstance(b, HalfPlane):
        return f"base half {b.axis} {_color(b.first)} {_color(b.second)}"
    if isinstance(b, Stripes):
        return f"base stripes {_num(b.period)} {_num(b.phase)} {_color(b.first)} {_color(b.second)}"
    if isinstance(b, Rings):
        return (f"base rings {_num(b.center[0])} {_num(b.center[1])} {_num(b.period)} "
                f"{_color(b.first)} {_color(b.second)}")
    return f"base checker {_num(b.period)} {_color(b.first)} {_color(b.second)}"


def format_step(s: Deformation) -> str:
    if isinstance(s, Vortex):
        p = s.params
        vals = (*p.center, p.gamma, p.nu, p.t)
        return "vortex " + " ".join(_num(v) for v in vals)
    if isinstance(s, LineStroke):
        vals = (*s.origin, *s.direction, s.z, s.lam)
        return "line " + " ".join(_num(v) for v in vals)
    if isinstance(s, CircleStroke):
        vals = (*s.center, s.radius, s.z, s.lam)
        return "circle " + " ".join(_num(v) for v in vals)
    return "drop " + " ".join(_num(v) for v in (*s.center, s.rho)) + " " + _color(s.color)


def format_recipe(r: Recipe) -> str:
    """Canonical text; ``parse(format_recipe(r)) == r``."""
    vp = r.viewport
    lines = []
    if r.version is not None:
        lines.append(f"version {r.version}")
    lines.append("viewport " + " ".join(
        [_num(vp.min_x), _num(vp.min_y), _num(vp.width), _num(vp.height),
         str(vp.pixels_x), str(vp.pixels_y)]))
    lines.append(format_base(r.base))
    lines.extend(format_step(s) for s in r.steps)
    out = f"render {r.output}"
    if r.supersample != 1:
        out += f" supersample {r.supersample}"
    lines.append(out)
    return "\n".join(lines) + "\n"
