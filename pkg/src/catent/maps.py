"""Torus-map dynamics on the unit torus and on its N x N lattice lift.

The maps treated here act on the 2-torus through the unimodular matrix

    [[1 + alpha, 1],
     [alpha,     1]]

reduced mod 1.  Integer ``alpha`` gives continuous toral automorphisms (the
cat-map family, hyperbolic for alpha outside [-4, 0]); real ``alpha`` gives
the discontinuous sawtooth generalization, in which the first coordinate
passes through the fractional part before the matrix acts.  The lattice lift
rescales the unit-torus action to the grid [0, N)^2, so integer points map to
integer points whenever alpha is an integer.

Conventions:

* Fractional parts live in [0, 1).  Points exactly on the discontinuity line
  of the sawtooth map take the left-closed branch, i.e. frac(0) = 0.
* Integer-alpha lattice orbits use exact integer arithmetic with mod-N
  reduction at every step; floating point never enters that path.
* Real-alpha orbits are kept in [0, N)^2 double precision and reduced mod N
  every step.  A single step costs a few ulps of the intermediate products
  (absolute error about ``(2 + |alpha|) * N * 2**-52``), so for the intended
  short orbits (n up to ~16) the accumulated error stays many orders of
  magnitude below the lattice resolution of 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

HYPERBOLIC = "hyperbolic"
ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"

# Exact periods of the integer elliptic rotations: T^period is the identity
# as an integer matrix, independent of any grid.
ELLIPTIC_PERIODS = {-1: 6, -2: 4, -3: 3}


def frac(x: float) -> float:
    """Fractional part in [0, 1); guards against rounding up to 1.0."""
    r = x % 1.0
    return r if r < 1.0 else 0.0


def _mod_grid(x: float, n: int) -> float:
    r = x % n
    return r if r < n else 0.0


@dataclass(frozen=True)
class MapParams:
    """Dynamical parameter ``alpha`` and inverse lattice spacing ``grid``."""

    alpha: float
    grid: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if self.grid < 2:
            raise ValueError(f"grid must be >= 2, got {self.grid}")

    @property
    def integer_alpha(self) -> bool:
        return float(self.alpha).is_integer()

    @property
    def alpha_int(self) -> int:
        if not self.integer_alpha:
            raise ValueError(f"alpha={self.alpha} is not an integer")
        return int(self.alpha)


def torus_matrix(alpha: float) -> np.ndarray:
    """The 2x2 map matrix; integer dtype when alpha is an integer."""
    if float(alpha).is_integer():
        a = int(alpha)
        return np.array([[1 + a, 1], [a, 1]], dtype=np.int64)
    return np.array([[1.0 + alpha, 1.0], [alpha, 1.0]])


def transpose_matrix(alpha: float) -> np.ndarray:
    """Transpose of the map matrix, which drives the dual (frequency) action."""
    return torus_matrix(alpha).T.copy()


def eigenvalues(alpha: float) -> tuple[complex, complex]:
    """Both eigenvalues ((alpha+2) +- sqrt((alpha+2)^2 - 4)) / 2.

    The pair multiplies to 1 (determinant one).  The discriminant is negative
    exactly for alpha in (-4, 0), where the pair is complex conjugate on the
    unit circle.
    """
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    tr = alpha + 2.0
    root = cmath.sqrt(complex(tr * tr - 4.0))
    return (tr + root) / 2.0, (tr - root) / 2.0


@dataclass(frozen=True)
class Regime:
    """Spectral classification of the map at a given alpha.

    ``lambda_plus`` is the eigenvalue of largest modulus (for the elliptic
    case, the unit-modulus root with nonnegative imaginary part), and
    ``log_expansion`` is ln|lambda_plus|, which is the Lyapunov exponent of
    the continuous map: positive in the hyperbolic regime and exactly zero
    otherwise.
    """

    tag: str
    lambda_plus: complex
    log_expansion: float


def classify_regime(alpha: float) -> Regime:
    """Classify by the eigenvalue discriminant.

    Elliptic strictly inside (-4, 0), parabolic where (alpha+2)^2 == 4
    (alpha in {0, -4}), hyperbolic otherwise.
    """
    lam_a, lam_b = eigenvalues(alpha)
    tr = alpha + 2.0
    if tr * tr == 4.0:
        return Regime(PARABOLIC, complex(tr / 2.0), 0.0)
    if -4.0 < alpha < 0.0:
        lam = lam_a if lam_a.imag >= 0 else lam_b
        return Regime(ELLIPTIC, lam, 0.0)
    lam = lam_a if abs(lam_a) >= abs(lam_b) else lam_b
    return Regime(HYPERBOLIC, lam, math.log(abs(lam)))


def elliptic_period(alpha: float) -> int | None:
    """Exact period of the integer elliptic maps (6, 4, 3), else None."""
    if float(alpha).is_integer():
        return ELLIPTIC_PERIODS.get(int(alpha))
    return None


def apply_T(params: MapParams, x: tuple[float, float]) -> tuple[float, float]:
    """One step of the continuous toral automorphism on [0, 1)^2.

    Requires integer alpha; real-alpha callers must use :func:`apply_S`.
    """
    if not params.integer_alpha:
        raise ValueError(
            f"apply_T requires integer alpha (got {params.alpha}); "
            "use apply_S for the sawtooth map"
        )
    a = params.alpha_int
    x1, x2 = x
    return frac((1 + a) * x1 + x2), frac(a * x1 + x2)


def apply_U_lattice(params: MapParams, l: tuple[int, int]) -> tuple[int, int]:
    """One step of the lattice lift on (Z/NZ)^2, exact integer arithmetic."""
    a = params.alpha_int
    n = params.grid
    l1, l2 = int(l[0]), int(l[1])
    return ((1 + a) * l1 + l2) % n, (a * l1 + l2) % n


def apply_S(params: MapParams, x: tuple[float, float]) -> tuple[float, float]:
    """One step of the sawtooth map on [0, 1)^2, any real alpha.

    The first coordinate is replaced by its fractional part before the matrix
    acts, which makes the formula well defined on the torus.  For integer
    alpha this coincides with :func:`apply_T` on [0, 1)^2.
    """
    a = params.alpha
    q = frac(x[0])
    x2 = x[1]
    return frac((1.0 + a) * q + x2), frac(a * q + x2)


def apply_S_inverse(params: MapParams, x: tuple[float, float]) -> tuple[float, float]:
    """Inverse sawtooth step: shear back, take fractional parts, unkick."""
    a = params.alpha
    w1 = frac(x[0] - x[1])
    w2 = frac(x[1])
    return frac(w1), frac(-a * w1 + w2)


def trajectory_U(
    params: MapParams, l: tuple[float, float], steps: int
) -> list[tuple[float, float]]:
    """Orbit (l, U l, ..., U^(steps-1) l) of the lattice lift on [0, N)^2.

    Integer alpha: exact integer path (every point stays on the lattice).
    Real alpha: double-precision path through the rescaled sawtooth map,
    reduced mod N at every step.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    n = params.grid
    if params.integer_alpha:
        a = params.alpha_int
        p1, p2 = int(l[0]) % n, int(l[1]) % n
        out: list[tuple[float, float]] = [(p1, p2)]
        for _ in range(steps - 1):
            p1, p2 = ((1 + a) * p1 + p2) % n, (a * p1 + p2) % n
            out.append((p1, p2))
        return out
    a = params.alpha
    x1, x2 = _mod_grid(float(l[0]), n), _mod_grid(float(l[1]), n)
    out = [(x1, x2)]
    for _ in range(steps - 1):
        x1, x2 = _mod_grid((1.0 + a) * x1 + x2, n), _mod_grid(a * x1 + x2, n)
        out.append((x1, x2))
    return out


def all_lattice_orbits(params: MapParams, steps: int) -> np.ndarray:
    """Orbits of every lattice point at once, shape (steps, N^2, 2).

    Row p holds U^p applied to all N^2 lattice points in flat order
    (l1 * N + l2).  Integer alpha yields an exact int64 array; real alpha a
    float64 array reduced mod N per step.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    n = params.grid
    l1, l2 = np.divmod(np.arange(n * n, dtype=np.int64), n)
    if params.integer_alpha:
        a = params.alpha_int
        out = np.empty((steps, n * n, 2), dtype=np.int64)
        x1, x2 = l1, l2
        for p in range(steps):
            out[p, :, 0] = x1
            out[p, :, 1] = x2
            if p + 1 < steps:
                x1, x2 = ((1 + a) * x1 + x2) % n, (a * x1 + x2) % n
        return out
    a = params.alpha
    out = np.empty((steps, n * n, 2))
    x1, x2 = l1.astype(float), l2.astype(float)
    for p in range(steps):
        out[p, :, 0] = x1
        out[p, :, 1] = x2
        if p + 1 < steps:
            x1, x2 = ((1.0 + a) * x1 + x2) % n, (a * x1 + x2) % n
            x1[x1 >= n] = 0.0
            x2[x2 >= n] = 0.0
    return out
