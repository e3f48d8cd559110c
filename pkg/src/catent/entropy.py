"""Partition-of-unity entropies of the discretized torus dynamics.

A partition is a set of D lattice points; each point labels a normalized
exponential observable on the N^2-point grid, and the squared moduli of the
D observables sum to the identity.  Refining the partition along the
dynamics for n steps produces a state whose Von Neumann entropy measures the
diversity of length-n symbolic histories.  Two engines compute that entropy:

frequency engine (integer alpha only)
    Each length-n symbol string maps to the lattice point given by the sum
    of the transposed-matrix powers applied to the chosen partition points.
    The entropy is the Shannon entropy of the resulting frequency histogram.
    Rather than enumerating all D^n strings, the histogram is built by n
    convolution passes over the grid (O(n D N^2) time): pass k shifts the
    previous count field by each k-th-power image of a partition point and
    sums.  Counts are exact integers (int64 while D^n fits, arbitrary
    precision beyond), so the histogram is exact at every step.

gram engine (any real alpha)
    The N^2 x N^2 Gram matrix of the per-point string-amplitude vectors has
    the same nonzero spectrum as the refined state, so its Von Neumann
    entropy equals the partition entropy.  Because the amplitude phases are
    additive over time steps with independent symbol choices, the D^n-term
    inner product factorizes into an entrywise product of n rank-D step
    factors; the matrix is built from those factors and diagonalized.

For integer alpha the two engines agree: the Gram eigenvalues are exactly
the string frequencies.  For non-integer alpha the lattice orbit leaves the
integer grid, symbol counts no longer determine the spectrum, and only the
gram engine applies.

A brute-force reference, :func:`oracle_density_matrix`, builds the D^n x D^n
multitime correlation matrix by direct summation over the lattice; it is
guarded to small sizes and exists so the fast paths can be checked against
an independent computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .maps import MapParams, all_lattice_orbits

# Grids above this size would need a multi-GiB dense Gram matrix.
MAX_GRAM_GRID = 100

# Brute-force correlation matrices are capped at this dimension.
MAX_ORACLE_DIM = 4096

ENGINES = ("frequency", "gram", "auto")


@dataclass(frozen=True)
class Partition:
    """Ordered set of distinct lattice points labelling the partition."""

    points: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pts = tuple((int(p[0]), int(p[1])) for p in self.points)
        if not pts:
            raise ValueError("partition needs at least one point")
        if len(set(pts)) != len(pts):
            raise ValueError("partition points must be distinct")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return len(self.points)

    def require_grid(self, n_grid: int) -> None:
        """Check every coordinate lies in [0, N)."""
        for p in self.points:
            if not (0 <= p[0] < n_grid and 0 <= p[1] < n_grid):
                raise ValueError(f"partition point {p} outside [0, {n_grid})^2")


@dataclass(eq=False)
class FrequencyField:
    """Exact string-image histogram after n steps.

    ``counts`` is an (N, N) array of integers (int64 or Python ints) indexed
    by lattice coordinates; the counts sum to D^n.  ``nu`` converts to the
    normalized frequency field.
    """

    counts: np.ndarray
    n: int
    partition_size: int

    @property
    def grid(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return self.partition_size ** self.n

    @property
    def nu(self) -> np.ndarray:
        return self.counts.astype(float) / float(self.total)


@dataclass(eq=False)
class GramMatrix:
    """Hermitian, unit-trace, PSD matrix of string-amplitude inner products."""

    entries: np.ndarray
    n: int


@dataclass(eq=False)
class EntropySeries:
    """Rows (n, H(n), h(n) = H(n)/n), entropies in nats."""

    n: np.ndarray
    H: np.ndarray
    h: np.ndarray
    engine: str

    def rows(self) -> Iterator[tuple[int, float, float]]:
        for k in range(len(self.n)):
            yield int(self.n[k]), float(self.H[k]), float(self.h[k])

    def __len__(self) -> int:
        return len(self.n)


def _transpose_powers_mod(alpha: int, n_grid: int, count: int) -> list[list[list[int]]]:
    """[(T^tr)^p mod N for p in range(count)] as exact integer 2x2 matrices."""
    a = int(alpha)
    t = [[(1 + a) % n_grid, a % n_grid], [1 % n_grid, 1 % n_grid]]
    powers = [[[1, 0], [0, 1]]]
    for _ in range(count - 1):
        m = powers[-1]
        powers.append(
            [
                [
                    (t[0][0] * m[0][0] + t[0][1] * m[1][0]) % n_grid,
                    (t[0][0] * m[0][1] + t[0][1] * m[1][1]) % n_grid,
                ],
                [
                    (t[1][0] * m[0][0] + t[1][1] * m[1][0]) % n_grid,
                    (t[1][0] * m[0][1] + t[1][1] * m[1][1]) % n_grid,
                ],
            ]
        )
    return powers


def string_image(
    part: Partition, params: MapParams, symbols: Sequence[int]
) -> tuple[int, int]:
    """Lattice point reached by a symbol string, exact mod-N arithmetic.

    ``symbols`` is a 1-based sequence (each entry in 1..D); entry p selects
    which partition point is propagated by the p-th transposed-matrix power.
    """
    part.require_grid(params.grid)
    n_grid = params.grid
    if not symbols:
        raise ValueError("symbol string must be nonempty")
    for s in symbols:
        if not 1 <= s <= part.size:
            raise ValueError(f"symbol {s} outside 1..{part.size}")
    powers = _transpose_powers_mod(params.alpha_int, n_grid, len(symbols))
    acc1 = acc2 = 0
    for p, s in enumerate(symbols):
        r1, r2 = part.points[s - 1]
        m = powers[p]
        acc1 += m[0][0] * r1 + m[0][1] * r2
        acc2 += m[1][0] * r1 + m[1][1] * r2
    return acc1 % n_grid, acc2 % n_grid


def _count_fields(
    part: Partition, params: MapParams, n_max: int
) -> Iterator[np.ndarray]:
    """Yield the exact count field after 1..n_max convolution passes."""
    part.require_grid(params.grid)
    n_grid = params.grid
    d = part.size
    exact64 = d ** n_max < 2 ** 62
    dtype = np.int64 if exact64 else object
    counts = np.zeros((n_grid, n_grid), dtype=dtype)
    counts[0, 0] = 1
    powers = _transpose_powers_mod(params.alpha_int, n_grid, n_max)
    for p in range(n_max):
        m = powers[p]
        shifts = [
            (
                (m[0][0] * r1 + m[0][1] * r2) % n_grid,
                (m[1][0] * r1 + m[1][1] * r2) % n_grid,
            )
            for (r1, r2) in part.points
        ]
        nxt = np.zeros_like(counts)
        for s1, s2 in shifts:
            nxt += np.roll(counts, shift=(s1, s2), axis=(0, 1))
        counts = nxt
        yield counts


def frequencies(part: Partition, params: MapParams, n: int) -> FrequencyField:
    """Frequency field of string images after n steps (integer alpha only).

    Equivalent to counting, over all D^n symbol strings, how many map to
    each lattice point, then dividing by D^n; computed by the convolution
    recursion instead of string enumeration.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = None
    for counts in _count_fields(part, params, n):
        pass
    return FrequencyField(counts=counts, n=n, partition_size=part.size)


def _entropy_from_counts(counts: np.ndarray, total: int) -> float:
    """Shannon entropy in nats of counts/total, exact-count form."""
    flat = counts[counts > 0]
    if flat.dtype == object:
        flat = flat.astype(float)
    else:
        flat = flat.astype(float, copy=False)
    return math.log(total) - float(np.sum(flat * np.log(flat))) / float(total)


def shannon_entropy(nu) -> float:
    """Shannon entropy -sum nu ln nu in nats, with 0 ln 0 = 0.

    Accepts a :class:`FrequencyField` (uses its exact counts) or any array of
    nonnegative weights summing to 1.
    """
    if isinstance(nu, FrequencyField):
        return _entropy_from_counts(nu.counts, nu.total)
    arr = np.asarray(nu, dtype=float).ravel()
    pos = arr[arr > 0]
    return float(-np.sum(pos * np.log(pos)))


def support_set(nu) -> set[tuple[int, int]]:
    """Lattice points carrying nonzero frequency."""
    if isinstance(nu, FrequencyField):
        mask = nu.counts > 0
    else:
        mask = np.asarray(nu) > 0
    return {(int(i), int(j)) for i, j in np.argwhere(mask)}


def _step_factor(
    part: Partition, params: MapParams, orbit_row: np.ndarray
) -> np.ndarray:
    """Rank-D step factor: averaged phase outer product over partition points."""
    n_grid = params.grid
    r = np.asarray(part.points)
    if orbit_row.dtype.kind == "i":
        table = np.exp(2j * np.pi * np.arange(n_grid) / n_grid)
        k = (orbit_row @ r.T.astype(np.int64)) % n_grid
        w = table[k]
    else:
        w = np.exp((2j * np.pi / n_grid) * (orbit_row @ r.T.astype(float)))
    return (w @ w.conj().T) / part.size


def _gram_products(
    part: Partition, params: MapParams, n_max: int
) -> Iterator[np.ndarray]:
    """Yield the accumulated entrywise product of step factors for n=1..n_max."""
    part.require_grid(params.grid)
    n_grid = params.grid
    if n_grid > MAX_GRAM_GRID:
        raise ValueError(
            f"grid {n_grid} needs a {n_grid ** 2}x{n_grid ** 2} dense Gram matrix; "
            f"the gram engine is capped at grid {MAX_GRAM_GRID} "
            "(use the frequency engine for integer alpha)"
        )
    orbits = all_lattice_orbits(params, n_max)
    prod = None
    for p in range(n_max):
        factor = _step_factor(part, params, orbits[p])
        prod = factor if prod is None else prod * factor
        yield prod


def gram_matrix(part: Partition, params: MapParams, n: int) -> GramMatrix:
    """Gram matrix of the N^2 string-amplitude vectors after n steps.

    Entry (l1, l2) is (1/N^2) times the product over time steps p < n of the
    partition-averaged phase factor exp(2 pi i r . (U^p l1 - U^p l2) / N);
    the product form collapses the D^n-term inner-product sum.  The result
    is Hermitian and PSD with unit trace (validated to roundoff here).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    prod = None
    for prod in _gram_products(part, params, n):
        pass
    entries = prod / params.grid ** 2
    herm_gap = float(np.max(np.abs(entries - entries.conj().T)))
    if herm_gap > 1e-10:
        raise ValueError(f"Gram matrix lost Hermiticity ({herm_gap:.2e})")
    trace_gap = abs(float(np.trace(entries).real) - 1.0)
    if trace_gap > 1e-9:
        raise ValueError(f"Gram matrix trace differs from 1 by {trace_gap:.2e}")
    return GramMatrix(entries=entries, n=n)


def gram_entropy(g) -> float:
    """Von Neumann entropy -sum eta ln eta of a Gram matrix, in nats.

    Eigenvalues are clamped to [0, 1] before the entropy; a spectrum dipping
    below -1e-8 signals a malformed matrix and raises.
    """
    entries = g.entries if isinstance(g, GramMatrix) else np.asarray(g)
    w = np.linalg.eigvalsh(entries)
    low = float(w.min())
    if low < -1e-8:
        raise ValueError(f"matrix is not PSD (eigenvalue {low:.3e})")
    w = np.clip(w, 0.0, 1.0)
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def entropy_series(
    part: Partition, params: MapParams, n_max: int, engine: str = "auto"
) -> EntropySeries:
    """Entropies H(n) and production rates h(n) = H(n)/n for n = 1..n_max.

    ``engine`` is one of 'frequency', 'gram' or 'auto'; auto picks the
    frequency engine for integer alpha and the gram engine otherwise.  The
    frequency engine rejects non-integer alpha: the sawtooth orbit leaves the
    integer lattice, sampling no longer commutes with the evolution, and the
    string histogram ceases to be the Gram spectrum.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    if engine == "auto":
        engine = "frequency" if params.integer_alpha else "gram"
    ns = np.arange(1, n_max + 1)
    hs = np.empty(n_max)
    if engine == "frequency":
        if not params.integer_alpha:
            raise ValueError(
                "frequency engine requires integer alpha: for non-integer "
                "alpha the orbit leaves the lattice and symbol counts no "
                "longer give the spectrum; use engine='gram'"
            )
        d = part.size
        for k, counts in enumerate(_count_fields(part, params, n_max)):
            hs[k] = _entropy_from_counts(counts, d ** (k + 1))
    else:
        n_sq = params.grid ** 2
        for k, prod in enumerate(_gram_products(part, params, n_max)):
            hs[k] = gram_entropy(prod / n_sq)
    return EntropySeries(n=ns, H=hs, h=hs / ns, engine=engine)


def oracle_density_matrix(part: Partition, params: MapParams, n: int) -> np.ndarray:
    """Brute-force D^n x D^n multitime correlation matrix.

    Entry (i, j) is the lattice average of the phase difference between the
    two symbol strings' accumulated exponents.  Strings are enumerated
    lexicographically with the first symbol most significant.  The matrix is
    Hermitian, PSD and unit trace, and its nonzero spectrum matches the Gram
    matrix built by the fast path.  Dimension is capped at
    ``MAX_ORACLE_DIM``; this routine exists for cross-checks, not production
    runs.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    part.require_grid(params.grid)
    d = part.size
    dim = d ** n
    if dim > MAX_ORACLE_DIM:
        raise ValueError(f"D^n = {dim} exceeds the oracle cap {MAX_ORACLE_DIM}")
    n_grid = params.grid
    r = np.asarray(part.points)
    orbits = all_lattice_orbits(params, n)
    if orbits.dtype.kind == "i":
        phases = np.zeros((1, n_grid * n_grid), dtype=np.int64)
        for p in range(n):
            step = (orbits[p] @ r.T.astype(np.int64)).T % n_grid  # (D, N^2)
            phases = (phases[:, None, :] + step[None, :, :]).reshape(-1, n_grid * n_grid)
            phases %= n_grid
        amp = np.exp(2j * np.pi * phases / n_grid)
    else:
        phases = np.zeros((1, n_grid * n_grid))
        for p in range(n):
            step = (orbits[p] @ r.T.astype(float)).T
            phases = (phases[:, None, :] + step[None, :, :]).reshape(-1, n_grid * n_grid)
        amp = np.exp((2j * np.pi / n_grid) * phases)
    amp /= n_grid * math.sqrt(dim)
    return amp @ amp.conj().T
