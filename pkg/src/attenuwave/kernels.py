"""Convolution kernels as spectral multipliers.

Multipliers act on time signals through the grid transforms: analyze the
signal, multiply, synthesize.  The materialized time-domain kernel of a
multiplier ``m`` is the non-unitary synthesis

    k(t) = integral m(omega) * exp(-i*omega*t) domega,

the normalization under which the gamma = 2 relaxation kernel comes out
as ``2*sqrt(pi/(tau0*t)) * exp(-t/tau0) * H(t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dispersion import ModelSpec, _principal_power, alpha_star
from .exceptions import ModelValidationError, TailFloorError
from .grids import (
    FrequencyGrid,
    TimeSignal,
    band_taper,
    real_signal,
    time_to_spectrum,
)

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class SpectralMultiplier:
    """Immutable multiplier with a label, parameters, and an evaluator."""

    label: str
    params: dict
    eval: Callable[[np.ndarray], np.ndarray]
    growing: bool  # growing multipliers need a regularizer to materialize

    def __call__(self, omega) -> np.ndarray:
        return self.eval(np.asarray(omega, dtype=complex))

    def __mul__(self, other: "SpectralMultiplier") -> "SpectralMultiplier":
        return SpectralMultiplier(
            label=f"{self.label}*{other.label}",
            params={**self.params, **other.params},
            eval=lambda w, a=self.eval, b=other.eval: a(w) * b(w),
            growing=self.growing or other.growing,
        )


def frac_deriv(gamma: float) -> SpectralMultiplier:
    """Fractional time derivative: multiplier (-i*omega)**gamma, principal branch."""
    if not gamma > 0:
        raise ModelValidationError("gamma must be positive")
    return SpectralMultiplier(
        label="FracDeriv",
        params={"gamma": gamma},
        eval=lambda w: _principal_power(-1j * w, gamma),
        growing=True,
    )


def szabo_multiplier(gamma: float, alpha0: float, c0: float) -> SpectralMultiplier:
    """Loss-term multiplier of the power-law lossy wave equation:
    -2*alpha0*(-i*omega)**(gamma+1) / (cos(pi*gamma/2) * c0)."""
    if not gamma > 0 or float(gamma).is_integer():
        raise ModelValidationError("gamma must be positive and non-integer")
    coef = -2.0 * alpha0 / (math.cos(math.pi / 2 * gamma) * c0)
    return SpectralMultiplier(
        label="SzaboL",
        params={"gamma": gamma, "alpha0": alpha0, "c0": c0},
        eval=lambda w: coef * _principal_power(-1j * w, gamma + 1.0),
        growing=True,
    )


def k_star(model: ModelSpec) -> SpectralMultiplier:
    """Attenuation kernel multiplier of a homogeneous medium.

    With spatially constant parameters the radial derivative of the
    attenuation exponent is alpha_star itself; the radial-variation
    companion operator is identically zero and is represented as such.
    """
    return SpectralMultiplier(
        label="KStar",
        params=model.to_record(),
        eval=lambda w: alpha_star(model, w),
        growing=True,
    )


def k_star_radial(model: ModelSpec) -> SpectralMultiplier:
    """Radial-variation companion of k_star; zero for homogeneous media."""
    return SpectralMultiplier(
        label="KStarRadial",
        params=model.to_record(),
        eval=lambda w: np.zeros_like(np.asarray(w, dtype=complex)),
        growing=False,
    )


def _relax_root(gamma: float, tau0: float, w: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + _principal_power(-1j * tau0 * w, gamma - 1.0))


def t_half(gamma: float, tau0: float) -> SpectralMultiplier:
    """Decaying half of the relaxation operator pair:
    (1 + (-i*tau0*omega)**(gamma-1))**(-1/2), primitive square root."""
    if not 1.0 < gamma <= 2.0:
        raise ModelValidationError("gamma must be in (1, 2]")
    if not tau0 > 0:
        raise ModelValidationError("tau0 must be positive")
    return SpectralMultiplier(
        label="THalf",
        params={"gamma": gamma, "tau0": tau0},
        eval=lambda w: 1.0 / _relax_root(gamma, tau0, w),
        growing=False,
    )


def l_half(gamma: float, tau0: float) -> SpectralMultiplier:
    """Growing half of the relaxation operator pair, the inverse of t_half:
    (1 + (-i*tau0*omega)**(gamma-1))**(+1/2)."""
    if not 1.0 < gamma <= 2.0:
        raise ModelValidationError("gamma must be in (1, 2]")
    if not tau0 > 0:
        raise ModelValidationError("tau0 must be positive")
    return SpectralMultiplier(
        label="LHalf",
        params={"gamma": gamma, "tau0": tau0},
        eval=lambda w: _relax_root(gamma, tau0, w),
        growing=True,
    )


def apply_multiplier(
    mult: SpectralMultiplier,
    signal: TimeSignal,
    grid: FrequencyGrid,
    tail_floor: float = 1e-10,
) -> TimeSignal:
    """Apply a multiplier to a time signal spectrally.

    Compositions satisfy apply(m1, apply(m2, f)) == apply(m1*m2, f) up to
    roundoff.  Raises TailFloorError when the multiplied spectrum has not
    decayed below ``tail_floor`` (relative to its peak) at the band edge.
    """
    if signal.n != grid.n:
        raise ValueError(f"signal length {signal.n} != grid n {grid.n}")
    canonical_t0 = -(grid.n // 2) * grid.dt
    if abs(signal.dt - grid.dt) > 1e-12 * grid.dt or abs(signal.t0 - canonical_t0) > 1e-9 * grid.dt:
        raise ValueError("signal must live on the grid's canonical time axis")
    spec = time_to_spectrum(signal.samples, grid)
    spec *= mult(grid.omegas())
    peak = np.max(np.abs(spec))
    if peak > 0 and mult.growing:
        edge = max(abs(spec[0]), abs(spec[-1])) / peak
        if edge > tail_floor:
            raise TailFloorError(
                f"multiplied spectrum tail {edge:.2e} above floor {tail_floor:.2e}"
            )
    out, _ = real_signal(spec, grid)
    return out


def gaussian_regularizer(grid: FrequencyGrid, omega_c: float | None = None) -> np.ndarray:
    """Gaussian mollifier exp(-(omega/omega_c)**2); default cutoff omega_max/4."""
    if omega_c is None:
        omega_c = grid.omega_max / 4.0
    return np.exp(-((grid.omegas() / omega_c) ** 2))


def kernel_time_domain(
    mult: SpectralMultiplier,
    grid: FrequencyGrid,
    regularizer: np.ndarray | None = None,
) -> TimeSignal:
    """Materialize the (regularized) time-domain kernel of a multiplier.

    Growing multipliers are distributions and are only materialized with an
    explicit regularizer.  For the decaying relaxation multiplier the
    slowly-converging high-frequency asymptote is split off and synthesized
    in closed form, so the returned kernel resolves both the inverse
    square-root singularity at the origin and the exponential tail.
    """
    if mult.growing and regularizer is None:
        raise TailFloorError(
            f"{mult.label} is a growing multiplier; supply a regularizer"
        )
    w = grid.omegas()
    if mult.label == "THalf" and regularizer is None:
        return _t_half_kernel(mult, grid)
    spec = mult(w)
    if regularizer is not None:
        spec = spec * np.asarray(regularizer, dtype=float)
    sig, _ = real_signal(_SQRT_2PI * spec, grid)
    return sig


def _t_half_kernel(mult: SpectralMultiplier, grid: FrequencyGrid) -> TimeSignal:
    """Singular-split synthesis of the decaying relaxation kernel.

    Subtracts the damped asymptote (1/2 - i*tau0*omega)**(-s) with
    s = (gamma-1)/2, whose kernel is exact:
    2*pi * t**(s-1) * exp(-t/(2*tau0)) / (tau0**s * Gamma(s)) * H(t).
    The remainder is smooth at the origin, decays faster in frequency,
    and its kernel decays exponentially in time.
    """
    gamma_, tau0 = mult.params["gamma"], mult.params["tau0"]
    s = (gamma_ - 1.0) / 2.0
    w = grid.omegas()
    asym = (0.5 - 1j * tau0 * w) ** (-s)
    diff = (mult(w) - asym) * band_taper(grid, 0.5)
    num, _ = real_signal(_SQRT_2PI * diff, grid)
    t = grid.times()
    tpos = np.where(t > 0, t, np.inf)
    exact = 2.0 * np.pi * tpos ** (s - 1.0) * np.exp(-0.5 * tpos / tau0) / (
        tau0**s * math.gamma(s)
    )
    out = num.samples + np.where(t > 0, exact, 0.0)
    return TimeSignal(t0=num.t0, dt=num.dt, samples=out, meta={"split": "damped-asymptote"})
