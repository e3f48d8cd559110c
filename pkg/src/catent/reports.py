"""Delimited output, PGM density images, and matplotlib figure rendering.

All numeric text output uses the shortest round-trip representation of the
double (Python ``repr``), so parsing an emitted file recovers the in-memory
values exactly and reruns with identical inputs produce byte-identical
files.  Density images are binary PGM (P5, maxval 255): bit-exact,
dependency-free and diffable; the grayscale maps ``round(255 nu / nu_max)``
with zero frequency rendered black, normalized per frame.  Figures (PNG) are
a convenience layer on top of the delimited data, not a data format.
"""

from __future__ import annotations

import math
import os
from typing import Iterable, Sequence

import numpy as np

from .entropy import EntropySeries, FrequencyField


def format_float(x: float) -> str:
    """Shortest decimal string that round-trips to the same double."""
    return repr(float(x))


def alpha_label(alpha: float) -> str:
    """Compact alpha tag used in filenames (1.0 -> '1', 0.05 -> '0.05')."""
    return f"{alpha:g}"


# ---------------------------------------------------------------------------
# delimited output
# ---------------------------------------------------------------------------

def write_entropy_csv(path: str, series: EntropySeries) -> None:
    """Header 'n,H_nats,h_nats', one row per step."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,H_nats,h_nats\n")
        for n, big_h, h in series.rows():
            fh.write(f"{n},{format_float(big_h)},{format_float(h)}\n")


def read_entropy_csv(path: str) -> EntropySeries:
    ns, hs, rates = [], [], []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "n,H_nats,h_nats":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            if not line.strip():
                continue
            n, big_h, h = line.strip().split(",")
            ns.append(int(n))
            hs.append(float(big_h))
            rates.append(float(h))
    return EntropySeries(
        n=np.array(ns, dtype=np.int64),
        H=np.array(hs),
        h=np.array(rates),
        engine="file",
    )


def write_lyapunov_csv(path: str, rows: Iterable[tuple[float, int, float, float | None]]) -> None:
    """Header 'alpha,m,l_m,theoretical'; blank theoretical when None."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("alpha,m,l_m,theoretical\n")
        for alpha, m, value, theo in rows:
            last = "" if theo is None else format_float(theo)
            fh.write(f"{format_float(alpha)},{m},{format_float(value)},{last}\n")


def read_lyapunov_csv(path: str) -> list[tuple[float, int, float, float | None]]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "alpha,m,l_m,theoretical":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            if not line.strip():
                continue
            alpha, m, value, theo = line.rstrip("\n").split(",")
            out.append((float(alpha), int(m), float(value), float(theo) if theo else None))
    return out


def write_frequency_csv(path: str, field: FrequencyField) -> None:
    """Lossless sidecar of the raw frequency field: 'l1,l2,nu' per point."""
    nu = field.nu
    n_grid = field.grid
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("l1,l2,nu\n")
        for l1 in range(n_grid):
            for l2 in range(n_grid):
                fh.write(f"{l1},{l2},{format_float(nu[l1, l2])}\n")


def read_frequency_csv(path: str) -> np.ndarray:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "l1,l2,nu":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            if not line.strip():
                continue
            l1, l2, nu = line.strip().split(",")
            rows.append((int(l1), int(l2), float(nu)))
    n_grid = max(r[0] for r in rows) + 1
    out = np.zeros((n_grid, n_grid))
    for l1, l2, nu in rows:
        out[l1, l2] = nu
    return out


# ---------------------------------------------------------------------------
# PGM density images
# ---------------------------------------------------------------------------

def density_gray(nu: np.ndarray) -> np.ndarray:
    """Per-frame grayscale: round(255 nu / nu_max), zeros stay black."""
    nu = np.asarray(nu, dtype=float)
    peak = float(nu.max())
    if peak <= 0.0:
        raise ValueError("frequency field has no positive entries")
    return np.rint(255.0 * nu / peak).astype(np.uint8)


def field_to_image(gray: np.ndarray) -> np.ndarray:
    """Reorient a [l1, l2]-indexed field to image rows: l1 right, l2 up."""
    return gray.T[::-1, :]


def write_pgm(path: str, gray: np.ndarray, comment: str = "") -> None:
    """Binary PGM (P5, maxval 255) with a single comment line in the header."""
    gray = np.asarray(gray, dtype=np.uint8)
    if gray.ndim != 2:
        raise ValueError("gray must be a 2-D array")
    if "\n" in comment:
        raise ValueError("comment must be a single line")
    height, width = gray.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n")
        if comment:
            fh.write(b"# " + comment.encode("ascii") + b"\n")
        fh.write(f"{width} {height}\n255\n".encode("ascii"))
        fh.write(gray.tobytes())


def read_pgm(path: str) -> tuple[np.ndarray, str]:
    """Read a binary PGM written by :func:`write_pgm`; returns (gray, comment)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P5"):
        raise ValueError(f"{path}: not a P5 PGM")
    pos = 2
    comment = ""
    tokens: list[int] = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            end = data.index(b"\n", pos)
            comment = data[pos + 1 : end].decode("ascii").strip()
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        tokens.append(int(data[start:pos]))
    pos += 1  # single whitespace after maxval
    width, height, maxval = tokens
    if maxval != 255:
        raise ValueError(f"{path}: unsupported maxval {maxval}")
    gray = np.frombuffer(data[pos : pos + width * height], dtype=np.uint8)
    return gray.reshape(height, width).copy(), comment


def write_density_pgm(path: str, field: FrequencyField, comment: str) -> None:
    write_pgm(path, field_to_image(density_gray(field.nu)), comment)


# ---------------------------------------------------------------------------
# figure rendering
# ---------------------------------------------------------------------------

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def entropy_figure(
    path: str,
    series_by_alpha: dict[float, EntropySeries],
    n_grid: int,
) -> None:
    """H(n) and h(n) curves for every alpha in one two-panel figure."""
    plt = _pyplot()
    fig, (ax_h, ax_rate) = plt.subplots(1, 2, figsize=(9.6, 4.0))
    many = len(series_by_alpha) > 8
    for alpha in sorted(series_by_alpha):
        series = series_by_alpha[alpha]
        label = None if many else f"alpha={alpha_label(alpha)}"
        ax_h.plot(series.n, series.H, marker="o", ms=3, lw=1, label=label)
        ax_rate.plot(series.n, series.h, marker="o", ms=3, lw=1, label=label)
    ax_h.axhline(2 * math.log(n_grid), color="k", ls=":", lw=1)
    ax_h.set_xlabel("steps n")
    ax_h.set_ylabel("H(n)  [nats]")
    ax_h.set_title(f"entropy, grid N={n_grid} (dotted: 2 ln N)")
    ax_rate.set_xlabel("steps n")
    ax_rate.set_ylabel("h(n) = H(n)/n  [nats/step]")
    ax_rate.set_title("entropy production")
    if not many:
        ax_h.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def lyapunov_figure(
    path: str,
    rows: Sequence[tuple[float, int, float, float | None]],
) -> None:
    """Estimates l(m) against alpha, one line per degree m, plus the theory curve."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    degrees = sorted({m for _, m, _, _ in rows})
    for m in degrees:
        pts = sorted((a, v) for a, mm, v, _ in rows if mm == m)
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, lw=1,
                label=f"m={m}")
    theo = sorted((a, t) for a, _, _, t in rows if t is not None)
    if theo:
        seen = dict(theo)
        xs = sorted(seen)
        ax.plot(xs, [seen[x] for x in xs], "k-", lw=1.5, label="ln lambda")
    ax.set_xlabel("alpha")
    ax.set_ylabel("extrapolated exponent  [nats/step]")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def density_figure(path: str, fields: Sequence[tuple[int, np.ndarray]]) -> None:
    """Montage of per-step frequency fields (one imshow panel per n)."""
    plt = _pyplot()
    count = len(fields)
    cols = min(count, 5)
    rowcount = (count + cols - 1) // cols
    fig, axes = plt.subplots(rowcount, cols, figsize=(2.2 * cols, 2.4 * rowcount),
                             squeeze=False)
    for k, (n, nu) in enumerate(fields):
        ax = axes[k // cols][k % cols]
        ax.imshow(field_to_image(density_gray(nu)), cmap="gray", vmin=0, vmax=255,
                  interpolation="nearest")
        ax.set_title(f"n={n}", fontsize=8)
        ax.set_xticks([])
        ax.set_yticks([])
    for k in range(count, rowcount * cols):
        axes[k // cols][k % cols].axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def ensure_dir(path: str) -> None:
    os.makedirs(path, exist_ok=True)
