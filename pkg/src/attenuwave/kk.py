"""Discrete Hilbert transform and Kramers-Kronig diagnostics on a finite band.

The transform is spectral: synthesize the conjugate-domain signal,
multiply by -i*sign(t), analyze back.  Its sign convention is pinned so
that the attenuation/phase link reproduces the closed-form power-law
dispersion with positive tan(pi*gamma/2) for gamma in (0, 1); on bounded
test pairs it is the classical transform (cos -> sin, sin -> -cos).

Unbounded attenuation laws are handled in once-subtracted fashion: the
law is apodized with a smooth taper over the outer half of the band, only
the interior quarter-band is trusted, and (where the model has a finite
zero-frequency speed) the reconstructed slowness is anchored there.  The
residual diagnostics here are advisory; causality verdicts come from the
half-plane certification module.
"""

from __future__ import annotations

import numpy as np

from .dispersion import ModelSpec, alpha_star, attenuation, phase_speed
from .exceptions import IllConditionedError, SingularLimitError
from .grids import FrequencyGrid, band_taper, spectrum_to_time, time_to_spectrum

#: customary taper start as fraction of the band edge
APOD_START_FRAC = 0.5
#: trusted interior band as fraction of the band edge
INTERIOR_FRAC = 0.25
#: samples adjacent to omega = 0 excluded from slowness reconstruction
ZERO_EXCLUSION = 4


def hilbert_transform(samples: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    """Hilbert transform of an array sampled on the frequency grid.

    Exactly linear; maps even arrays to odd arrays; and on compactly
    supported smooth arrays satisfies H(H(f)) = -f up to band-edge error.
    Real input yields real output; complex input is transformed
    component-wise (real-linearly).
    """
    samples = np.asarray(samples)
    if samples.size != grid.n:
        raise ValueError(f"length {samples.size} != grid n {grid.n}")
    if np.iscomplexobj(samples):
        return hilbert_transform(samples.real, grid) + 1j * hilbert_transform(
            samples.imag, grid
        )
    conj = spectrum_to_time(samples.astype(complex), grid)
    j = np.arange(grid.n) - grid.n // 2
    conj *= -1j * np.sign(j)
    return time_to_spectrum(conj, grid).real


def apodized_attenuation(model: ModelSpec, grid: FrequencyGrid) -> np.ndarray:
    """Attenuation law on the grid, tapered over the outer half-band."""
    return attenuation(model, grid.omegas()) * band_taper(grid, APOD_START_FRAC)


def interior_band(grid: FrequencyGrid, frac: float = INTERIOR_FRAC) -> np.ndarray:
    """Boolean mask of the trusted interior band, excluding omega ~ 0."""
    w = grid.omegas()
    return (np.abs(w) <= frac * grid.omega_max) & (
        np.abs(w) >= ZERO_EXCLUSION * grid.domega
    )


def kk_slowness(model: ModelSpec, grid: FrequencyGrid) -> np.ndarray:
    """Reconstruct 1/c(omega) = 1/v_B - H(alpha)(omega)/omega on the grid.

    Models with a finite zero-frequency phase speed get the once-subtracted
    anchor: the constant band-edge artifact of the finite-band transform is
    removed by pinning the smallest-frequency slowness to 1/c(0).  The
    omega = 0 sample (and its immediate neighbours, where the discrete
    transform cannot resolve a cusp) are filled by local interpolation.
    """
    w = grid.omegas()
    h = hilbert_transform(apodized_attenuation(model, grid), grid)
    slowness = np.full(grid.n, np.nan)
    nz = w != 0
    slowness[nz] = 1.0 / model.bound_speed - h[nz] / w[nz]
    try:
        c0 = phase_speed(model, 0.0, zero_limit=True)
        j = grid.n // 2 + ZERO_EXCLUSION
        slowness += 1.0 / c0 - slowness[j]
    except SingularLimitError:
        pass
    # fill the excluded zone by linear interpolation across it
    n2 = grid.n // 2
    lo, hi = n2 - ZERO_EXCLUSION, n2 + ZERO_EXCLUSION
    x = np.arange(lo, hi + 1)
    slowness[lo : hi + 1] = np.interp(x, [lo, hi], [slowness[lo], slowness[hi]])
    self_check_edge_error(model, grid, slowness)
    return slowness


def self_check_edge_error(
    model: ModelSpec, grid: FrequencyGrid, slowness: np.ndarray
) -> None:
    """Raise when the apodization's edge error dominates the interior values.

    Compares the dispersive part of the reconstruction against one computed
    with a narrower taper; a disagreement above 10% of the interior scale
    means the band cannot hold the law.
    """
    w = grid.omegas()
    alt = attenuation(model, w) * band_taper(grid, APOD_START_FRAC / 2)
    h_alt = hilbert_transform(alt, grid)
    nz = w != 0
    disp = np.zeros(grid.n)
    disp[nz] = -h_alt[nz] / w[nz]
    base = np.zeros(grid.n)
    base[nz] = slowness[nz] - 1.0 / model.bound_speed
    mask = interior_band(grid)
    scale = max(np.max(np.abs(base[mask])), 1e-300)
    # both reconstructions may carry a constant offset; compare mod constants
    delta = (disp[mask] - np.mean(disp[mask])) - (base[mask] - np.mean(base[mask]))
    if np.max(np.abs(delta)) > 0.10 * scale:
        raise IllConditionedError(
            "apodized transform edge error exceeds 10% of interior values"
        )


def kk_phase_speed(model: ModelSpec, grid: FrequencyGrid) -> np.ndarray:
    """Phase speed reconstructed from the attenuation law alone (plus anchor).

    Interior-band values match the model's closed-form phase speed; band
    edges and the omega ~ 0 zone are untrusted.
    """
    return 1.0 / kk_slowness(model, grid)


#: internal band-widening factor for the residual diagnostic
RESIDUAL_WIDEN = 32


def kk_residual(model: ModelSpec, grid: FrequencyGrid) -> float:
    """Interior-band inconsistency of the paired relations
    Re a = -Im H(a), Im a = Re H(a) for a = alpha_star.

    Laws that grow with |omega| satisfy the relations only in subtracted
    form: the even-part relation is defined modulo a constant and the
    odd-part relation modulo a linear term.  The residual removes those
    fitted ambiguities, is evaluated on an internally widened band (the
    finite-band edge artifact decays with the padding), and is normalized
    by max |alpha_star| over the original grid's interior quarter-band.
    Diagnostics only: a real-axis residual cannot refute the logarithmic
    gamma = 1 law, whose defect is off-axis; verdicts come from
    certification.
    """
    n_wide = min(8 * grid.n, 2**20)
    wide = FrequencyGrid(
        n=n_wide, domega=2.0 * RESIDUAL_WIDEN * grid.omega_max / n_wide
    )
    w = wide.omegas()
    a = alpha_star(model, w.astype(complex)) * band_taper(wide, APOD_START_FRAC)
    if np.max(np.abs(a)) == 0.0:
        return 0.0
    h = hilbert_transform(a, wide)
    r1 = np.real(a) + np.imag(h)  # even relation, defined mod constant
    r2 = np.imag(a) - np.real(h)  # odd relation, defined mod linear
    band = (np.abs(w) <= INTERIOR_FRAC * grid.omega_max) & (
        np.abs(w) >= ZERO_EXCLUSION * wide.domega
    )
    r1_sub = r1[band] - np.mean(r1[band])
    slope = np.sum(r2[band] * w[band]) / np.sum(w[band] ** 2)
    r2_sub = r2[band] - slope * w[band]
    scale = np.max(np.abs(a[band]))
    return float(np.max(np.abs(r1_sub) + np.abs(r2_sub)) / scale)
