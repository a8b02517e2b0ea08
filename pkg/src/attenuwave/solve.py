"""Attenuated-wave responses of point-source sums and history sources.

Responses are assembled spectrally: the field of a unit point source at
distance r has absolute-time spectrum
``exp(i*omega*r/v_B) * exp(-alpha_star(omega)*r) / (4*pi*r)``, and a
waveform convolves in as a spectral product.  The generalized Cauchy
construction turns a smooth history q supported on t <= 0 into an
equivalent distributional source: endpoint delta terms plus the
commutator of the attenuation operator with the Heaviside cutoff, which
depends only on the history and is supported in t >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import ModelSpec, alpha_star
from .grids import FrequencyGrid, TimeSignal, real_signal, time_to_spectrum
from .kernels import SpectralMultiplier, frac_deriv, k_star


@dataclass(frozen=True)
class SourceTerm:
    position: np.ndarray  # 3-vector
    weight: float
    waveform: TimeSignal

    def __post_init__(self):
        pos = np.asarray(self.position, dtype=float).reshape(3)
        object.__setattr__(self, "position", pos)
        if not np.all(np.isfinite(pos)):
            raise ValueError("source position must be finite")


@dataclass(frozen=True)
class PointSourceSum:
    terms: tuple[SourceTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("need at least one source term")
        dts = {t.waveform.dt for t in self.terms}
        if len(dts) > 1:
            raise ValueError("waveforms must share dt")


def _canonical_t0(grid: FrequencyGrid) -> float:
    return -(grid.n // 2) * grid.dt


def _waveform_spectrum(wf: TimeSignal, grid: FrequencyGrid) -> np.ndarray:
    """Spectrum of a waveform, honouring its time origin."""
    if wf.n != grid.n:
        raise ValueError(f"waveform length {wf.n} != grid n {grid.n}")
    if abs(wf.dt - grid.dt) > 1e-12 * grid.dt:
        raise ValueError("waveform dt does not match the grid")
    spec = time_to_spectrum(wf.samples, grid)
    shift = wf.t0 - _canonical_t0(grid)
    if shift != 0.0:
        spec = spec * np.exp(1j * grid.omegas() * shift)
    return spec


def green_spectrum(model: ModelSpec, r: float, grid: FrequencyGrid) -> np.ndarray:
    """Spectral transfer function of the spherical field at distance r.

    Multiplying a waveform's spectrum by this yields the response spectrum:
    the zero-attenuation case reduces to the free-space delay
    ``f(t - r/v_B) / (4*pi*r)``.
    """
    if not r > 0:
        raise ValueError("distance must be positive")
    w = grid.omegas()
    a = alpha_star(model, w.astype(complex))
    return np.exp((1j * w / model.bound_speed - a) * r) / (4.0 * np.pi * r)


def superpose(
    model: ModelSpec,
    sources: PointSourceSum,
    probes: list[np.ndarray],
    grid: FrequencyGrid,
) -> list[TimeSignal]:
    """Per-probe response of a sum of point sources.

    Exactly linear in weights and waveforms, and invariant under common
    translations of sources and probes (only distances enter).
    """
    probes = [np.asarray(p, dtype=float).reshape(3) for p in probes]
    out = []
    for probe in probes:
        acc = np.zeros(grid.n, dtype=complex)
        for term in sources.terms:
            r = float(np.linalg.norm(probe - term.position))
            if r == 0.0:
                raise ValueError("probe coincides with a source position")
            fspec = _waveform_spectrum(term.waveform, grid)
            acc += term.weight * green_spectrum(model, r, grid) * fspec
        sig, _ = real_signal(acc, grid)
        sig.meta["probe"] = probe.tolist()
        out.append(sig)
    return out


def earliest_travel_time(sources: PointSourceSum, probe, bound_speed: float) -> float:
    probe = np.asarray(probe, dtype=float).reshape(3)
    return min(
        float(np.linalg.norm(probe - t.position)) / bound_speed for t in sources.terms
    )


def _one_sided_derivative(q: TimeSignal, j0: int) -> float:
    # second-order backward stencil at sample j0
    s, dt = q.samples, q.dt
    return float((3 * s[j0] - 4 * s[j0 - 1] + s[j0 - 2]) / (2 * dt))


def _c2_check(q: TimeSignal, j_end: int) -> None:
    """Reject histories whose interior curvature is not resolution-limited.

    Compares the 3-point second difference at steps dt and 2*dt where the
    curvature is largest; for twice-differentiable samples they agree.  The
    support endpoint is skipped (a derivative kink at t = 0 is the whole
    point of the endpoint data).
    """
    s = q.samples
    if np.max(np.abs(s)) == 0.0 or j_end < 6:
        return
    # centers at most j_end - 2 so the 2*dt stencil stays inside the support
    interior = slice(2, j_end - 2)
    d2a = (s[2:] - 2 * s[1:-1] + s[:-2])[interior]
    if d2a.size == 0:
        return
    j = int(np.argmax(np.abs(d2a))) + 1 + interior.start
    a = s[j + 1] - 2 * s[j] + s[j - 1]
    b = (s[j + 2] - 2 * s[j] + s[j - 2]) / 4.0
    tol = 0.25 * (abs(a) + abs(b)) + 1e-12 * np.max(np.abs(s))
    if abs(a - b) > tol:
        raise ValueError("history fails the discrete C2 smoothness check")


@dataclass
class CauchyData:
    """Smooth history supported on t <= 0 with its endpoint data."""

    q: TimeSignal
    phi: float
    psi: float

    def __post_init__(self):
        t = self.q.times()
        j0 = int(np.searchsorted(t, 0.0))
        if not np.isclose(t[j0], 0.0, atol=1e-9 * self.q.dt):
            raise ValueError("history grid must contain t = 0")
        future = self.q.samples[j0 + 1 :]
        scale = max(np.max(np.abs(self.q.samples)), 1e-300)
        if np.max(np.abs(future), initial=0.0) > 1e-12 * scale:
            raise ValueError("history must be supported on t <= 0")
        if abs(self.phi - self.q.samples[j0]) > 1e-9 * scale:
            raise ValueError("phi must equal the history's final sample")
        psi_num = _one_sided_derivative(self.q, j0)
        tol = 1e-6 * max(1.0, abs(self.psi)) + 10.0 * self.q.dt**2 * scale
        if abs(self.psi - psi_num) > tol:
            raise ValueError(
                f"psi={self.psi} inconsistent with one-sided derivative {psi_num}"
            )
        _c2_check(self.q, j0)

    @classmethod
    def from_history(cls, q: TimeSignal) -> "CauchyData":
        t = q.times()
        j0 = int(np.searchsorted(t, 0.0))
        return cls(q=q, phi=float(q.samples[j0]), psi=_one_sided_derivative(q, j0))


def attenuation_operator(model: ModelSpec) -> SpectralMultiplier:
    """The quadratic attenuation operator of the wave equation:
    multiplier alpha_star^2 + (2/v_B)*(-i*omega)*alpha_star.

    Together with the plain second time derivative it completes the square
    of the damped d'Alembertian:
    (alpha_star + (-i*omega)/v_B)^2 = this + (-i*omega)^2/v_B^2.
    """
    ks = k_star(model)
    d1 = frac_deriv(1.0)
    vb = model.bound_speed

    def ev(w):
        a = ks.eval(w)
        return a * a + (2.0 / vb) * d1.eval(w) * a

    return SpectralMultiplier(
        label="AttenuationOp", params=model.to_record(), eval=ev, growing=True
    )


def cauchy_source(data: CauchyData, model: ModelSpec, grid: FrequencyGrid) -> TimeSignal:
    """Equivalent distributional source of the generalized Cauchy problem.

    Returns the discrete source
    ``-psi/v_B^2 * delta(t) - phi/v_B^2 * delta'(t) - [A, M_H] q`` with A
    the quadratic attenuation operator.  delta is one sample of height
    1/dt; delta' is the antisymmetric pair +-1/(2*dt^2).  The commutator is
    computed as A(H*q) - H*A(q) through two spectral applications; since
    the operator kernels are causal it is supported in t >= 0 up to the
    numerical floor.
    """
    if data.q.n != grid.n:
        raise ValueError("history must live on the grid")
    vb = model.bound_speed
    dt = grid.dt
    t = grid.times()
    j0 = grid.n // 2
    out = np.zeros(grid.n)
    out[j0] += -data.psi / vb**2 / dt
    out[j0 - 1] += -data.phi / vb**2 / (2 * dt**2)
    out[j0 + 1] -= -data.phi / vb**2 / (2 * dt**2)

    a_op = attenuation_operator(model)
    heavi = (t >= 0.0).astype(float)
    spec_q = time_to_spectrum(data.q.samples, grid)
    spec_hq = time_to_spectrum(heavi * data.q.samples, grid)
    mult = a_op(grid.omegas())
    a_hq, _ = real_signal(mult * spec_hq, grid)
    a_q, _ = real_signal(mult * spec_q, grid)
    commutator = a_hq.samples - heavi * a_q.samples
    out -= commutator
    sig = TimeSignal(t0=-(grid.n // 2) * dt, dt=dt, samples=out)
    sig.meta["commutator"] = commutator
    return sig


def verify_cauchy(
    model: ModelSpec,
    data: CauchyData,
    grid: FrequencyGrid,
    r: float = 1.0,
) -> float:
    """Frequency-domain consistency residual of the wave equation.

    Propagates the equivalent source to a probe at radius r, then compares
    the radial Laplacian multiplier ``(alpha_star - i*omega/v_B)^2`` acting
    on r*p against the time-operator route assembled from the kernel
    algebra (attenuation operator plus second time derivative).  Relative,
    max over the interior quarter-band; zero data gives zero residual.
    """
    src = cauchy_source(data, model, grid)
    sources = PointSourceSum(
        terms=(SourceTerm(position=np.zeros(3), weight=1.0, waveform=src),)
    )
    probe = np.array([r, 0.0, 0.0])
    (resp,) = superpose(model, sources, [probe], grid)
    rp = r * time_to_spectrum(resp.samples, grid)
    w = grid.omegas()
    a = alpha_star(model, w.astype(complex))
    lam2 = (a - 1j * w / model.bound_speed) ** 2
    a_op = attenuation_operator(model)
    w_kern = a_op(w) + (-1j * w) ** 2 / model.bound_speed**2
    mask = np.abs(w) <= grid.omega_max / 4
    diff = np.abs((lam2 - w_kern) * rp)[mask]
    scale = np.max(np.abs(lam2 * rp)[mask])
    if scale == 0.0:
        return 0.0
    return float(np.max(diff) / scale)
