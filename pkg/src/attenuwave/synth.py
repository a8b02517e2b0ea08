"""Spectral synthesis of attenuated spherical-wave shells.

A shell at radius r is the real time signal synthesized from the spectrum
``exp(-alpha_star(omega) * r)``; it lives in shifted time (the bound-speed
travel time r/v_B is taken out).  The full spherical field divides by the
geometric factor 4*pi*r and restores the travel-time offset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dispersion import ModelSpec, alpha_star, attenuation
from .exceptions import NoCrossingError, TailFloorError
from .grids import (
    FrequencyGrid,
    TimeSignal,
    band_taper,
    precursor_energy,
    real_signal,
    time_to_spectrum,
)

__all__ = [
    "GreenField",
    "assemble_green",
    "front_speed_estimate",
    "precursor_energy",
    "shell_spectrum",
    "synth_shell",
]

#: fraction of the band over which the optional edge taper acts
TAPER_START_FRAC = 0.9
#: fraction of the window treated as wrap-around guard band
GUARD_FRAC = 0.05
#: double-precision roundoff gives precursor energies of this order even
#: for exactly causal spectra; recorded floors never fall below it
MACHINE_FLOOR = 1e-28


def shell_spectrum(model: ModelSpec, r: float, grid: FrequencyGrid) -> np.ndarray:
    """Spectrum exp(-alpha_star(omega)*r) of the shifted shell at radius r."""
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    return np.exp(-alpha_star(model, grid.omegas().astype(complex)) * r)


def synth_shell(
    model: ModelSpec,
    r: float,
    grid: FrequencyGrid,
    tail_floor: float = 1e-10,
    taper: bool = False,
) -> TimeSignal:
    """Synthesize the shifted Green shell at radius r.

    The spectral tail ``exp(-alpha(omega_max)*r)`` must sit below
    ``tail_floor`` unless an edge taper is enabled (its leakage is then
    added to the recorded floor) or the model is lossless on the grid
    (pure phases synthesize exactly).  Metadata records the achieved
    numerical floor and the wrap-around guard-band energy.
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    spec = shell_spectrum(model, r, grid)
    edge_att = attenuation(model, grid.omega_max)
    tail_value = math.exp(-edge_att * r) if edge_att * r < 700 else 0.0
    lossless = edge_att == 0.0 and attenuation(model, grid.omega_max / 2) == 0.0
    floor = 0.0 if lossless else max(tail_value, MACHINE_FLOOR)
    if taper:
        tp = band_taper(grid, TAPER_START_FRAC)
        removed = float(
            np.sqrt(np.sum(np.abs(spec * (1 - tp)) ** 2) / np.sum(np.abs(spec) ** 2))
        )
        spec = spec * tp
        # taper leakage dominates the honest floor once the tail is tapered off
        floor = max(removed, tail_value * 1e-2)
    elif not lossless and tail_value > tail_floor:
        raise TailFloorError(
            f"spectral tail {tail_value:.3e} above floor {tail_floor:.3e} "
            f"at omega_max={grid.omega_max:.3g}, r={r:.3g}; enlarge the band "
            "or enable the taper"
        )
    sig, imag_resid = real_signal(spec, grid)
    n = grid.n
    guard = int((1 - GUARD_FRAC) * n)
    total = float(np.sum(sig.samples**2))
    guard_energy = float(np.sum(sig.samples[guard:] ** 2) / total) if total > 0 else 0.0
    sig.meta.update(
        {
            "model": model.to_record(),
            "r": r,
            "floor": floor,
            "tail_value": tail_value,
            "imag_residual": imag_resid,
            "guard_energy": guard_energy,
        }
    )
    return sig


@dataclass
class GreenField:
    """Family of shifted shells indexed by radius, with travel-time offsets.

    The physical field value is ``shell(t - r/v_B) / (4*pi*r)``.
    """

    radii: np.ndarray
    shells: list[TimeSignal]
    bound_speed: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.radii = np.asarray(self.radii, dtype=float)
        if np.any(np.diff(self.radii) <= 0) or np.any(self.radii <= 0):
            raise ValueError("radii must be strictly increasing positives")
        if len(self.shells) != self.radii.size:
            raise ValueError("one shell per radius required")

    @property
    def travel_time(self) -> np.ndarray:
        return self.radii / self.bound_speed

    def evaluate(self, r: float, t) -> np.ndarray:
        """Field value at radius r (interpolated between stored shells)."""
        t = np.asarray(t, dtype=float)
        if r < self.radii[0] or r > self.radii[-1]:
            raise ValueError(f"radius {r} outside stored range")
        tau = t - r / self.bound_speed
        j = int(np.searchsorted(self.radii, r))
        if j == 0 or self.radii[j - 1] == r:
            j = max(j, 1)
        lo, hi = j - 1, min(j, self.radii.size - 1)
        if lo == hi or self.radii[lo] == r:
            shell_val = self.shells[lo].value_at(tau)
        else:
            wgt = (r - self.radii[lo]) / (self.radii[hi] - self.radii[lo])
            shell_val = (1 - wgt) * self.shells[lo].value_at(tau) + wgt * self.shells[
                hi
            ].value_at(tau)
        return shell_val / (4.0 * np.pi * r)


def assemble_green(
    model: ModelSpec,
    radii: np.ndarray,
    grid: FrequencyGrid,
    tail_floor: float = 1e-10,
    taper: bool = False,
    threads: int = 1,
) -> GreenField:
    """Synthesize the spherical Green field on a radius table."""
    radii = np.asarray(radii, dtype=float)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            shells = list(
                ex.map(lambda r: synth_shell(model, r, grid, tail_floor, taper), radii)
            )
    else:
        shells = [synth_shell(model, r, grid, tail_floor, taper) for r in radii]
    return GreenField(
        radii=radii,
        shells=shells,
        bound_speed=model.bound_speed,
        meta={"model": model.to_record(), "grid": {"n": grid.n, "domega": grid.domega}},
    )


def front_speed_estimate(field: GreenField, threshold: float) -> float:
    """Estimate the front speed from threshold-crossing arrival times.

    Per radius, the arrival is the first time |shell| exceeds
    threshold * max|shell|, measured in unshifted time t + r/v_B; the
    estimate is the slope of the least-squares fit of r against arrival.
    The result is threshold-dependent: laws with smooth onsets cross late,
    biasing the estimate low.
    """
    if field.radii.size < 3:
        raise ValueError("need at least 3 radii")
    if not 0.0 < threshold < 0.5:
        raise ValueError("threshold must be in (0, 0.5)")
    arrivals = []
    for r, shell in zip(field.radii, field.shells):
        amp = np.abs(shell.samples)
        peak = amp.max()
        idx = np.nonzero(amp >= threshold * peak)[0]
        if idx.size == 0:
            raise NoCrossingError(f"no threshold crossing at r={r}")
        arrivals.append(shell.times()[idx[0]] + r / field.bound_speed)
    arrivals = np.asarray(arrivals)
    a = np.vstack([np.ones_like(arrivals), arrivals]).T
    coef, *_ = np.linalg.lstsq(a, field.radii, rcond=None)
    return float(coef[1])


def dc_mass(signal: TimeSignal) -> float:
    """sum(samples) * dt; equals sqrt(2*pi) * spectrum(0) for grid signals."""
    return float(np.sum(signal.samples) * signal.dt)


def shifted_spectrum(shell: TimeSignal, travel_time: float, grid: FrequencyGrid) -> np.ndarray:
    """Absolute-time spectrum of a shell: phase-shift by its travel time."""
    return time_to_spectrum(shell.samples, grid) * np.exp(
        1j * grid.omegas() * travel_time
    )
