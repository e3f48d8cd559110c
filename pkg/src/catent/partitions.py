"""Partition generators and the on-disk partition file format.

Three spec forms are accepted on the command line and in config files:

* ``random:D``            D distinct points from a seeded generator
* ``cluster:D``           nearest-neighbor cluster at the default center
* ``cluster:D:cx,cy``     nearest-neighbor cluster at (cx, cy)
* ``file:PATH``           explicit list, one "r1 r2" integer pair per line

Cluster shapes for D = 1..5 are fixed: the center, then its axial
neighbors in the order up, left, down, right (D=5); D=4 is the 2x2 block
center/up/left/up-left; D=3 drops the up-left corner; D=2 keeps center and
left.  Offsets wrap mod N, so clusters near the edge are valid.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .entropy import Partition

# Relative offsets per cluster size, applied to the center and wrapped mod N.
_CLUSTER_OFFSETS = {
    1: ((0, 0),),
    2: ((0, 0), (-1, 0)),
    3: ((0, 0), (0, 1), (-1, 0)),
    4: ((0, 0), (0, 1), (-1, 0), (-1, 1)),
    5: ((0, 0), (0, 1), (-1, 0), (0, -1), (1, 0)),
}


@dataclass(frozen=True)
class PartitionSpec:
    """Parsed partition request; ``gen_partition`` turns it into points."""

    kind: str  # random | cluster | file
    size: int = 0
    center: tuple[int, int] | None = None
    path: str | None = None

    @property
    def label(self) -> str:
        if self.kind == "file":
            return f"file:{os.path.basename(self.path or '')}"
        if self.kind == "cluster" and self.center is not None:
            return f"cluster:{self.size}:{self.center[0]},{self.center[1]}"
        return f"{self.kind}:{self.size}"


def parse_partition_spec(text: str) -> PartitionSpec:
    """Parse 'random:D', 'cluster:D[:cx,cy]' or 'file:PATH'."""
    parts = text.strip().split(":")
    kind = parts[0].lower()
    if kind == "file":
        if len(parts) < 2 or not parts[1]:
            raise ValueError(f"file spec needs a path: {text!r}")
        return PartitionSpec(kind="file", path=":".join(parts[1:]))
    if kind not in ("random", "cluster"):
        raise ValueError(f"unknown partition spec {text!r}")
    if len(parts) < 2:
        raise ValueError(f"{kind} spec needs a size: {text!r}")
    size = int(parts[1])
    center = None
    if kind == "cluster" and len(parts) >= 3:
        cx, cy = parts[2].split(",")
        center = (int(cx), int(cy))
    if kind == "random" and len(parts) >= 3:
        raise ValueError(f"random spec takes no extra field: {text!r}")
    return PartitionSpec(kind=kind, size=size, center=center)


def cluster_partition(size: int, center: tuple[int, int], n_grid: int) -> Partition:
    """Nearest-neighbor cluster of ``size`` points around ``center``, mod N."""
    if size not in _CLUSTER_OFFSETS:
        raise ValueError(f"cluster size must be 1..5, got {size}")
    cx, cy = int(center[0]) % n_grid, int(center[1]) % n_grid
    pts = tuple(((cx + dx) % n_grid, (cy + dy) % n_grid) for dx, dy in _CLUSTER_OFFSETS[size])
    if len(set(pts)) != len(pts):
        raise ValueError(f"grid {n_grid} too small for a {size}-point cluster")
    return Partition(pts)


def random_partition(size: int, n_grid: int, seed: int) -> Partition:
    """``size`` distinct points drawn from a seeded deterministic generator."""
    if size > n_grid * n_grid:
        raise ValueError(f"cannot place {size} distinct points on {n_grid}^2 grid")
    rng = np.random.default_rng(seed)
    idx = rng.choice(n_grid * n_grid, size=size, replace=False)
    return Partition(tuple((int(i) // n_grid, int(i) % n_grid) for i in idx))


def load_partition_file(path: str) -> Partition:
    """Read one 'r1 r2' integer pair per line; blank and '#' lines skipped."""
    pts = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            fields = body.split()
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'r1 r2', got {line!r}")
            pts.append((int(fields[0]), int(fields[1])))
    return Partition(tuple(pts))


def save_partition_file(path: str, part: Partition) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r1, r2 in part.points:
            fh.write(f"{r1} {r2}\n")


def gen_partition(spec, n_grid: int, seed: int = 0) -> Partition:
    """Materialize a partition from a spec string or :class:`PartitionSpec`."""
    if isinstance(spec, str):
        spec = parse_partition_spec(spec)
    if spec.kind == "file":
        part = load_partition_file(spec.path)
        part.require_grid(n_grid)
        return part
    if spec.size > n_grid * n_grid:
        raise ValueError(f"partition size {spec.size} exceeds {n_grid}^2 grid points")
    if spec.kind == "cluster":
        center = spec.center if spec.center is not None else (n_grid // 2, n_grid // 2)
        return cluster_partition(spec.size, center, n_grid)
    return random_partition(spec.size, n_grid, seed)
