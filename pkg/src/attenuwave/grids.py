"""Uniform frequency/time grids and the unitary transforms between them.

All spectral computations in this package live on a symmetric angular
frequency grid ``omega_k = (k - n/2) * domega``.  The dual time grid
``t_j = (j - n/2) * dt`` with ``dt = 2*pi/(n*domega)`` carries synthesized
kernels and waves.  The synthesis direction maps a spectrum ``s(omega)`` to

    v(t) = (1/sqrt(2*pi)) * integral s(omega) * exp(-i*omega*t) domega,

so a pure-phase spectrum ``exp(i*omega*d)`` lands at ``t = +d``.  The
analysis direction inverts it exactly on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import GridError, ZeroEnergyError

_SQRT_2PI = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class FrequencyGrid:
    """Symmetric uniform grid of angular frequencies.

    Attributes:
        n: sample count, a power of two >= 16
        domega: grid step in rad/s
    """

    n: int
    domega: float

    def __post_init__(self):
        if self.n < 16 or (self.n & (self.n - 1)) != 0:
            raise GridError(f"n must be a power of two >= 16, got {self.n}")
        if not self.domega > 0:
            raise GridError(f"domega must be positive, got {self.domega}")

    @property
    def dt(self) -> float:
        return 2.0 * np.pi / (self.n * self.domega)

    @property
    def omega_max(self) -> float:
        """Largest |omega| on the grid."""
        return (self.n // 2) * self.domega

    def omegas(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.domega

    def times(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.dt


@dataclass
class TimeSignal:
    """Uniform real-valued time samples with origin and step."""

    t0: float
    dt: float
    samples: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if not self.dt > 0:
            raise GridError(f"dt must be positive, got {self.dt}")
        if self.samples.ndim != 1:
            raise GridError("samples must be one-dimensional")

    @property
    def n(self) -> int:
        return self.samples.size

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    def energy(self) -> float:
        """Discrete L2 energy, sum(s^2) * dt."""
        return float(np.sum(self.samples**2) * self.dt)

    def value_at(self, t: float | np.ndarray) -> np.ndarray:
        """Linear interpolation in time; zero outside the window."""
        return np.interp(t, self.times(), self.samples, left=0.0, right=0.0)


def spectrum_to_time(spectrum: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    """Synthesize the time samples of a spectrum given on the grid.

    Returns complex samples of
    ``(1/sqrt(2*pi)) * sum_k s_k exp(-i*omega_k*t_j) * domega``
    on the dual time grid.
    """
    s = np.asarray(spectrum, dtype=complex)
    if s.size != grid.n:
        raise GridError(f"spectrum length {s.size} != grid n {grid.n}")
    v = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(s)))
    return v * (grid.domega / _SQRT_2PI)


def time_to_spectrum(samples: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    """Inverse of :func:`spectrum_to_time` on the same grid (exact)."""
    v = np.asarray(samples, dtype=complex)
    if v.size != grid.n:
        raise GridError(f"signal length {v.size} != grid n {grid.n}")
    s = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(v)))
    return s * (grid.n * grid.dt / _SQRT_2PI)


def hermitian_symmetrize(spectrum: np.ndarray) -> np.ndarray:
    """Project a spectrum onto Hermitian symmetry s(-omega) = conj(s(omega)).

    The unpaired edge sample (omega = -n/2*domega) is forced real.
    """
    s = np.asarray(spectrum, dtype=complex)
    out = np.empty_like(s)
    out[1:] = 0.5 * (s[1:] + np.conj(s[1:][::-1]))
    out[0] = s[0].real
    return out


def real_signal(spectrum: np.ndarray, grid: FrequencyGrid) -> tuple[TimeSignal, float]:
    """Synthesize a real TimeSignal from a spectrum.

    Hermitian symmetry is enforced first; the residual imaginary part after
    synthesis (relative to the peak amplitude) is returned alongside.
    """
    v = spectrum_to_time(hermitian_symmetrize(spectrum), grid)
    peak = np.max(np.abs(v.real))
    resid = float(np.max(np.abs(v.imag)) / peak) if peak > 0 else 0.0
    sig = TimeSignal(t0=-(grid.n // 2) * grid.dt, dt=grid.dt, samples=v.real)
    return sig, resid


def smooth_step(x: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, smooth in between."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = (x > 0) & (x < 1)
    with np.errstate(divide="ignore", over="ignore"):
        f = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        g = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    out[inside] = (f / (f + g))[inside]
    out[x >= 1] = 1.0
    return out


def band_taper(grid: FrequencyGrid, start_frac: float = 0.5) -> np.ndarray:
    """C-infinity taper over the outer band: 1 on |omega| <= start_frac * omega_max,
    decaying smoothly to 0 at the band edge."""
    if not 0.0 < start_frac < 1.0:
        raise GridError(f"start_frac must be in (0, 1), got {start_frac}")
    w = grid.omegas()
    wmax = grid.omega_max
    return smooth_step((wmax - np.abs(w)) / (wmax * (1.0 - start_frac)))


def precursor_energy(signal: TimeSignal, eps: float, origin: float = 0.0) -> float:
    """Fraction of signal energy arriving before ``origin - eps``.

    Args:
        signal: the time signal.
        eps: tolerance band, at least one time step.
        origin: nominal front time (default 0).
    """
    if eps < signal.dt:
        raise ValueError(f"eps must be >= dt ({signal.dt}), got {eps}")
    total = np.sum(signal.samples**2)
    if total == 0.0:
        raise ZeroEnergyError("signal has zero energy")
    # tiny guard keeps the boundary sample out despite time-axis rounding
    mask = signal.times() < origin - eps - 1e-9 * signal.dt
    return float(np.sum(signal.samples[mask] ** 2) / total)
