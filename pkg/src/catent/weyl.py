"""Sampling and coherent-state reconstruction between the torus and the grid.

Trigonometric polynomials are sampled onto the diagonal algebra of the N^2
lattice points (one complex value per point), and diagonal observables are
pulled back to functions on the torus through normalized coherent vectors
supported on the four corners of the grid cell containing the evaluation
point.  Sampling then reconstructing reproduces the function exactly on the
lattice and converges uniformly as N grows.

Only trigonometric polynomials (finite Fourier sums) are representable here;
general continuous functions are approximated by them and are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TrigPolynomial:
    """Finite Fourier sum sum_n c_n exp(2 pi i n . x), n in Z^2.

    ``terms`` maps the integer frequency pair to its complex coefficient.
    Zero coefficients are dropped at construction.
    """

    terms: dict[tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {
            (int(n1), int(n2)): complex(c)
            for (n1, n2), c in self.terms.items()
            if c != 0
        }
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def wave(cls, n1: int, n2: int, coeff: complex = 1.0) -> "TrigPolynomial":
        """The single exponential exp(2 pi i (n1 x1 + n2 x2))."""
        return cls({(n1, n2): coeff})

    @classmethod
    def constant(cls, c: complex = 1.0) -> "TrigPolynomial":
        return cls({(0, 0): c})

    def __call__(self, x1, x2):
        """Evaluate at scalars or numpy arrays (broadcast over x1, x2)."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        out = np.zeros(np.broadcast(x1, x2).shape, dtype=complex)
        for (n1, n2), c in self.terms.items():
            out += c * np.exp(1j * _TWO_PI * (n1 * x1 + n2 * x2))
        if out.shape == ():
            return complex(out)
        return out

    def __mul__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        prod: dict[tuple[int, int], complex] = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                key = (a1 + b1, a2 + b2)
                prod[key] = prod.get(key, 0.0) + c * d
        return TrigPolynomial(prod)

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        s = dict(self.terms)
        for k, d in other.terms.items():
            s[k] = s.get(k, 0.0) + d
        return TrigPolynomial(s)

    def conjugate(self) -> "TrigPolynomial":
        return TrigPolynomial(
            {(-n1, -n2): c.conjugate() for (n1, n2), c in self.terms.items()}
        )


def sample(f: TrigPolynomial, n_grid: int) -> np.ndarray:
    """Sample f on the lattice: value f(l/N) per point, flat order l1*N + l2.

    The result is the diagonal of the sampled observable.  Sampling is a
    *-morphism on trigonometric polynomials: it is linear, multiplicative
    pointwise, and commutes with conjugation.  Frequencies alias mod N.
    """
    if n_grid < 2:
        raise ValueError("n_grid must be >= 2")
    l1, l2 = np.divmod(np.arange(n_grid * n_grid), n_grid)
    return f(l1 / n_grid, l2 / n_grid).astype(complex)


@dataclass(frozen=True)
class CoherentWeights:
    """Cell-corner amplitudes of the coherent vector attached to x.

    ``base`` is the lattice cell corner (floor(N x1), floor(N x2)); the four
    weights multiply the basis vectors at base, base+(0,1), base+(1,0) and
    base+(1,1) (indices mod N).  The squares always sum to 1.
    """

    lambda11: float
    lambda12: float
    lambda21: float
    lambda22: float
    base: tuple[int, int]

    def squares(self) -> np.ndarray:
        return np.array(
            [self.lambda11, self.lambda12, self.lambda21, self.lambda22]
        ) ** 2


def coherent_weights(x: tuple[float, float], n_grid: int) -> CoherentWeights:
    """Corner weights cos/sin(pi/2 {N x_i}) products for x in [0, 1)^2."""
    t1 = (n_grid * x[0]) % 1.0
    t2 = (n_grid * x[1]) % 1.0
    t1 = t1 if t1 < 1.0 else 0.0
    t2 = t2 if t2 < 1.0 else 0.0
    b1 = int(math.floor(n_grid * x[0])) % n_grid
    b2 = int(math.floor(n_grid * x[1])) % n_grid
    c1, s1 = math.cos(math.pi / 2 * t1), math.sin(math.pi / 2 * t1)
    c2, s2 = math.cos(math.pi / 2 * t2), math.sin(math.pi / 2 * t2)
    return CoherentWeights(c1 * c2, c1 * s2, s1 * c2, s1 * s2, (b1, b2))


def reconstruct(values: np.ndarray, x: tuple[float, float]) -> complex:
    """Coherent-state expectation of a diagonal observable at x.

    ``values`` holds the N^2 diagonal entries in flat order.  The result is
    the squared-weight average of the four cell-corner values, and equals the
    sampled function exactly when x lies on the lattice.
    """
    values = np.asarray(values)
    n_grid = math.isqrt(values.size)
    if n_grid * n_grid != values.size:
        raise ValueError("values must have length N^2")
    w = coherent_weights(x, n_grid)
    b1, b2 = w.base
    corners = [
        (b1, b2),
        (b1, (b2 + 1) % n_grid),
        ((b1 + 1) % n_grid, b2),
        ((b1 + 1) % n_grid, (b2 + 1) % n_grid),
    ]
    sq = w.squares()
    return complex(sum(sq[k] * values[c1 * n_grid + c2] for k, (c1, c2) in enumerate(corners)))


def _reconstruct_grid(values: np.ndarray, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """Vectorized reconstruction over arrays of torus points."""
    values = np.asarray(values)
    n_grid = math.isqrt(values.size)
    s1 = n_grid * np.asarray(x1, dtype=float)
    s2 = n_grid * np.asarray(x2, dtype=float)
    b1 = np.floor(s1).astype(np.int64)
    b2 = np.floor(s2).astype(np.int64)
    t1 = s1 - b1
    t2 = s2 - b2
    b1 %= n_grid
    b2 %= n_grid
    c1 = np.cos(np.pi / 2 * t1) ** 2
    s1sq = 1.0 - c1
    c2 = np.cos(np.pi / 2 * t2) ** 2
    s2sq = 1.0 - c2
    b1n = (b1 + 1) % n_grid
    b2n = (b2 + 1) % n_grid
    v = values
    return (
        c1 * c2 * v[b1 * n_grid + b2]
        + c1 * s2sq * v[b1 * n_grid + b2n]
        + s1sq * c2 * v[b1n * n_grid + b2]
        + s1sq * s2sq * v[b1n * n_grid + b2n]
    )


def convergence_gap(f: TrigPolynomial, n_grid: int, samples: int = 317) -> float:
    """Estimated sup-norm gap between f and its sample-then-reconstruct image.

    The gap is maximized over a fixed offset lattice of ``samples`` x
    ``samples`` points ((i + 1/2)/samples per axis), so repeated calls are
    reproducible bit for bit.  This estimates, rather than computes, the
    uniform norm; the estimate decays to 0 as the grid is refined.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    grid = (np.arange(samples) + 0.5) / samples
    x1, x2 = np.meshgrid(grid, grid, indexing="ij")
    x1 = x1.ravel()
    x2 = x2.ravel()
    approx = _reconstruct_grid(sample(f, n_grid), x1, x2)
    exact = f(x1, x2)
    return float(np.max(np.abs(approx - exact)))
