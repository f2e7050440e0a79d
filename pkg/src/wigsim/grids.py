"""Grids, sampled Wigner fields, and quadrature primitives.

Conventions used everywhere in this package: hbar = 2, i.e. [q, p] = 2i and
the vacuum has <q^2> = <p^2> = 1. Phase-space coordinates of an N-mode state
are ordered (q1, p1, ..., qN, pN), and an N-mode Wigner field is sampled on
the cartesian product of 2N uniform axes in that order.

All integrals are composite trapezoid rules contracted axis by axis, last
axis first, with numpy's pairwise summation. The contraction order is fixed
so repeated runs produce bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    GridMismatchError,
    InvalidGridError,
    NonNormalizableError,
    UnnormalizedFieldError,
)

TOL_NORM = 1e-3

DEFAULT_QMAX = 16.0
DEFAULT_POINTS = 1025


def _check_axis(ax: np.ndarray) -> None:
    if ax.ndim != 1 or ax.size < 3:
        raise InvalidGridError("each axis needs at least 3 points")
    if not np.all(np.isfinite(ax)):
        raise InvalidGridError("axis values must be finite")
    steps = np.diff(ax)
    if np.any(steps <= 0):
        raise InvalidGridError("axis values must be strictly increasing")
    d = (ax[-1] - ax[0]) / (ax.size - 1)
    if np.max(np.abs(steps - d)) > 1e-9 * max(abs(d), 1e-30):
        raise InvalidGridError("axis spacing must be uniform")


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """Uniform rectangular sampling lattice over (q, p) per mode.

    axes holds 2N strictly increasing uniformly spaced 1D arrays ordered
    (q1, p1, ..., qN, pN).
    """

    axes: tuple

    def __post_init__(self):
        if len(self.axes) == 0 or len(self.axes) % 2 != 0:
            raise InvalidGridError("need one (q, p) axis pair per mode")
        frozen = []
        for ax in self.axes:
            arr = np.asarray(ax, dtype=float)
            _check_axis(arr)
            arr = arr.copy()
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "axes", tuple(frozen))

    @property
    def mode_count(self) -> int:
        return len(self.axes) // 2

    @property
    def shape(self) -> tuple:
        return tuple(ax.size for ax in self.axes)

    @property
    def spacings(self) -> tuple:
        return tuple((ax[-1] - ax[0]) / (ax.size - 1) for ax in self.axes)

    def axis(self, mode: int, quadrature: str) -> np.ndarray:
        if quadrature not in ("q", "p"):
            raise ValueError("quadrature must be 'q' or 'p'")
        return self.axes[2 * mode + (0 if quadrature == "q" else 1)]

    def open_mesh(self) -> tuple:
        """Axes broadcast-shaped for elementwise field construction."""
        return tuple(np.meshgrid(*self.axes, indexing="ij", sparse=True))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseSpaceGrid):
            return NotImplemented
        return len(self.axes) == len(other.axes) and all(
            a.size == b.size and np.array_equal(a, b)
            for a, b in zip(self.axes, other.axes)
        )


def build_grid(
    q_min: float,
    q_max: float,
    n_q: int,
    p_min: float,
    p_max: float,
    n_p: int,
    modes: int = 1,
) -> PhaseSpaceGrid:
    """Uniform grid with the same (q, p) axes replicated for every mode."""
    if modes < 1:
        raise InvalidGridError("modes must be >= 1")
    if n_q < 3 or n_p < 3:
        raise InvalidGridError("n_q and n_p must be >= 3")
    for lo, hi in ((q_min, q_max), (p_min, p_max)):
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise InvalidGridError("bounds must be finite")
        if not lo < hi:
            raise InvalidGridError("bounds must satisfy min < max")
    q = np.linspace(q_min, q_max, n_q)
    p = np.linspace(p_min, p_max, n_p)
    return PhaseSpaceGrid(axes=(q, p) * modes)


def default_grid(modes: int = 1) -> PhaseSpaceGrid:
    """The package default: [-16, 16]^2 with 1025 points per axis."""
    m = DEFAULT_QMAX
    n = DEFAULT_POINTS
    return build_grid(-m, m, n, -m, m, n, modes=modes)


def trapezoid_weights(ax: np.ndarray) -> np.ndarray:
    d = (ax[-1] - ax[0]) / (ax.size - 1)
    w = np.full(ax.size, d)
    w[0] = w[-1] = d / 2
    return w


def integrate_samples(samples: np.ndarray, axes: tuple) -> float:
    """Trapezoid integral over all axes, contracted last axis first."""
    if samples.ndim != len(axes):
        raise ValueError("samples dimensionality does not match axes")
    out = samples
    for ax in reversed(axes):
        out = out @ trapezoid_weights(ax) if out.ndim == 1 else (
            out * trapezoid_weights(ax)
        ).sum(axis=-1)
    return float(out)


@dataclass(frozen=True, eq=False)
class QuadratureDistribution:
    """Probability density of a single quadrature on its axis values."""

    values: np.ndarray
    densities: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        dens = np.asarray(self.densities, dtype=float)
        _check_axis(vals)
        if dens.shape != vals.shape:
            raise ValueError("densities and values must have matching length")
        if not np.all(np.isfinite(dens)):
            raise ValueError("densities must be finite")
        if np.min(dens) < 0:
            raise ValueError("densities must be nonnegative")
        total = float(dens @ trapezoid_weights(vals))
        if abs(total - 1.0) > TOL_NORM:
            raise ValueError(f"density integrates to {total:.6f}, expected 1")
        vals, dens = vals.copy(), dens.copy()
        vals.setflags(write=False)
        dens.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "densities", dens)


@dataclass(frozen=True, eq=False)
class WignerField:
    """Real Wigner-function samples on a grid for an N-mode state.

    normalized means the trapezoid integral was within TOL_NORM of 1 when
    the field was built. Samples are read-only; operations return new fields.
    """

    grid: PhaseSpaceGrid
    samples: np.ndarray
    normalized: bool

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.shape != self.grid.shape:
            raise ValueError(
                f"samples shape {arr.shape} does not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("Wigner samples must be finite")
        arr = arr.copy() if not arr.flags.owndata or arr.flags.writeable else arr
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def mode_count(self) -> int:
        return self.grid.mode_count


def field_from_samples(
    grid: PhaseSpaceGrid, samples: np.ndarray, tol: float = TOL_NORM
) -> WignerField:
    """Wrap samples, setting the normalized flag from the actual integral."""
    total = integrate_samples(np.asarray(samples, dtype=float), grid.axes)
    return WignerField(grid=grid, samples=samples, normalized=abs(total - 1.0) <= tol)


def integrate_full(field: WignerField) -> float:
    """Integral of the field over the whole grid domain."""
    return integrate_samples(field.samples, field.grid.axes)


def renormalize(field: WignerField) -> WignerField:
    """Explicitly rescale a field so its trapezoid integral is 1."""
    total = integrate_full(field)
    if abs(total) < 1e-12:
        raise NonNormalizableError("field integral is negligible, cannot rescale")
    return WignerField(
        grid=field.grid, samples=field.samples / total, normalized=True
    )


def marginal_over(field: WignerField, dropped_modes) -> WignerField:
    """Integrate out both quadratures of the dropped modes (partial trace).

    dropped_modes is a set of 0-based mode indices; it must be a nonempty
    proper subset of the field's modes.
    """
    modes = set(dropped_modes)
    n = field.mode_count
    if not modes:
        raise ValueError("dropped_modes must be nonempty")
    if not modes.issubset(range(n)):
        raise ValueError(f"mode indices must lie in 0..{n - 1}")
    if len(modes) == n:
        raise ValueError("cannot drop every mode; at least one must remain")

    dropped_axes = sorted(
        [2 * m for m in modes] + [2 * m + 1 for m in modes], reverse=True
    )
    out = field.samples
    for ax_idx in dropped_axes:
        w = trapezoid_weights(field.grid.axes[ax_idx])
        out = np.tensordot(out, w, axes=([ax_idx], [0]))
    kept_axes = tuple(
        ax
        for i, ax in enumerate(field.grid.axes)
        if i not in set(dropped_axes)
    )
    return field_from_samples(PhaseSpaceGrid(axes=kept_axes), out)


def tensor_product(a: WignerField, b: WignerField) -> WignerField:
    """Joint field of a product state: W(x_A, x_B) = W_A(x_A) W_B(x_B)."""
    if not (a.normalized and b.normalized):
        raise UnnormalizedFieldError("tensor_product requires normalized factors")
    joint = np.multiply.outer(a.samples, b.samples)
    grid = PhaseSpaceGrid(axes=a.grid.axes + b.grid.axes)
    return field_from_samples(grid, joint)


def overlap_trace(a: WignerField, b: WignerField) -> float:
    """Tr(rho_a rho_b) = (4 pi)^N integral of W_a W_b (hbar = 2)."""
    if a.grid != b.grid:
        raise GridMismatchError("overlap_trace needs both fields on one grid")
    n = a.mode_count
    return (4.0 * np.pi) ** n * integrate_samples(
        a.samples * b.samples, a.grid.axes
    )


def wigner_from_wavefunction(
    psi: Callable[[np.ndarray], np.ndarray],
    grid: PhaseSpaceGrid,
    y_max: float | None = None,
    samples_per_period: int = 8,
) -> WignerField:
    """Wigner field of a pure state from its position wavefunction.

    W(q, p) = (1/2pi) * int dy psi*(q - y) psi(q + y) exp(-i p y)

    psi is called with ndarray arguments (it is evaluated at q +- y, which
    can exceed the grid's q-range). The y-integral is truncated at y_max
    (default: the grid's q half-width) and sampled so the exp(-i p y)
    oscillation at the largest |p| gets at least samples_per_period points
    per period; the Gaussian-enveloped chirps this module produces decay
    fast enough that trapezoid aliasing is negligible at that density.

    The result is divided by its own integral (the squared norm of psi on
    the grid), so unnormalized wavefunctions are accepted.
    """
    if grid.mode_count != 1:
        raise ValueError("wigner_from_wavefunction handles single-mode grids")
    q = grid.axes[0]
    p = grid.axes[1]
    if y_max is None:
        y_max = (q[-1] - q[0]) / 2
    p_ref = max(np.max(np.abs(p)), 1e-12)
    dy = min(2 * np.pi / (samples_per_period * p_ref), y_max / 200)
    n_half = int(np.ceil(y_max / dy))
    y = np.linspace(-y_max, y_max, 2 * n_half + 1)

    corr = np.conjugate(psi(q[:, None] - y[None, :])) * psi(q[:, None] + y[None, :])
    kernel = np.exp(-1j * np.outer(y, p)) * trapezoid_weights(y)[:, None]
    w = (corr @ kernel).real / (2 * np.pi)

    total = integrate_samples(w, grid.axes)
    if total < 1e-8:
        raise NonNormalizableError("wavefunction has negligible norm on the grid")
    return WignerField(grid=grid, samples=w / total, normalized=True)


def _coordinate_columns(grid: PhaseSpaceGrid) -> np.ndarray:
    mesh = np.meshgrid(*grid.axes, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def csv_header(mode_count: int) -> str:
    if mode_count == 1:
        return "q,p,w"
    cols = []
    for m in range(1, mode_count + 1):
        cols += [f"q{m}", f"p{m}"]
    return ",".join(cols + ["w"])


def write_field_csv(field: WignerField, path) -> None:
    """Row-major CSV dump: one row per grid node, all values %.12e."""
    coords = _coordinate_columns(field.grid)
    data = np.column_stack([coords, field.samples.ravel()])
    np.savetxt(
        path,
        data,
        fmt="%.12e",
        delimiter=",",
        header=csv_header(field.mode_count),
        comments="",
    )


def read_field_csv(path) -> WignerField:
    """Rebuild a field from write_field_csv output."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    n_axes = data.shape[1] - 1
    if n_axes < 2 or n_axes % 2 != 0:
        raise ValueError("unexpected CSV column count")
    axes = []
    for j in range(n_axes):
        vals = np.unique(data[:, j])
        axes.append(vals)
    grid = PhaseSpaceGrid(axes=tuple(axes))
    expected = _coordinate_columns(grid)
    if expected.shape[0] != data.shape[0] or not np.allclose(
        expected, data[:, :n_axes], atol=0, rtol=1e-12
    ):
        raise ValueError("CSV rows are not a row-major grid enumeration")
    samples = data[:, -1].reshape(grid.shape)
    return field_from_samples(grid, samples)
