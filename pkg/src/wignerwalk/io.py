"""CSV and PPM serialization of phase-space grids."""
from __future__ import annotations

import os
import re
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .model import DisorderKind
from .wigner import GridMeta, PhaseSpaceGrid

_PPM_HEADER = re.compile(rb"P6\s+(\d+)\s+(\d+)\s+(\d+)\s")


def _atomic_write(path: Path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            os.fchmod(fh.fileno(), 0o644)
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_header(meta: GridMeta) -> str:
    fields = {
        "n": meta.n,
        "j": meta.j,
        "time": "longtime" if meta.longtime else repr(float(meta.time)),
        "kind": meta.kind.value,
        "delta": repr(float(meta.delta)),
        "r": meta.r,
        "seed": "none" if meta.seed is None else meta.seed,
        "version": __version__,
    }
    return "# " + " ".join(f"{k}={v}" for k, v in fields.items())


def parse_header(line: str) -> GridMeta:
    if not line.startswith("#"):
        raise ValueError("missing '#' metadata header")
    fields = dict(item.split("=", 1) for item in line[1:].split())
    return GridMeta(
        n=int(fields["n"]),
        j=int(fields["j"]),
        time=None if fields["time"] == "longtime" else float(fields["time"]),
        kind=DisorderKind.parse(fields["kind"]),
        delta=float(fields["delta"]),
        seed=None if fields["seed"] == "none" else int(fields["seed"]),
        r=int(fields["r"]),
    )


def write_grid_csv(g: PhaseSpaceGrid, path) -> None:
    """Header line, then one row per position x with N values (17 significant digits)."""
    lines = [format_header(g.meta)]
    lines += [",".join(f"{v:.17g}" for v in row) for row in g.w]
    _atomic_write(Path(path), ("\n".join(lines) + "\n").encode("utf-8"))


def read_grid_csv(path) -> PhaseSpaceGrid:
    with open(path, encoding="utf-8") as fh:
        meta = parse_header(fh.readline())
        w = np.array([[float(v) for v in line.split(",")] for line in fh if line.strip()])
    if w.shape != (meta.n, meta.n):
        raise ValueError(f"{path}: expected {meta.n}x{meta.n} values, found {w.shape}")
    return PhaseSpaceGrid(w, meta)


def diverging_rgb(w: np.ndarray) -> np.ndarray:
    """Blue (-max|w|) through white (0) to red (+max|w|), linear in RGB."""
    m = float(np.max(np.abs(w))) if w.size else 0.0
    rgb = np.full(w.shape + (3,), 255, dtype=np.uint8)
    if m == 0.0:
        return rgb
    s = np.clip(w / m, -1.0, 1.0)
    fade = np.rint(255.0 * (1.0 - np.abs(s))).astype(np.uint8)
    pos, neg = s > 0, s < 0
    rgb[pos, 1] = fade[pos]
    rgb[pos, 2] = fade[pos]
    rgb[neg, 0] = fade[neg]
    rgb[neg, 1] = fade[neg]
    return rgb


def heatmap_pixels(g: PhaseSpaceGrid, zoom: int = 4) -> np.ndarray:
    """Image rows top to bottom: x runs left to right, kappa = 0 at the bottom."""
    if zoom < 1:
        raise ValueError("zoom must be a positive integer")
    rgb = diverging_rgb(g.w)  # [x, kappa, 3]
    img = rgb.transpose(1, 0, 2)[::-1]  # [row = N-1-kappa, col = x, 3]
    return np.repeat(np.repeat(img, zoom, axis=0), zoom, axis=1)


def render_heatmap(g: PhaseSpaceGrid, path, zoom: int = 4) -> None:
    img = heatmap_pixels(g, zoom)
    height, width = img.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    _atomic_write(Path(path), header + np.ascontiguousarray(img).tobytes())


def read_ppm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    m = _PPM_HEADER.match(data)
    if m is None or m.group(3) != b"255":
        raise ValueError(f"{path}: not an 8-bit binary PPM")
    width, height = int(m.group(1)), int(m.group(2))
    return np.frombuffer(data[m.end():], dtype=np.uint8).reshape(height, width, 3)
