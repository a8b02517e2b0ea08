import math

import numpy as np
import pytest

from attenuwave import (
    FrequencyGrid,
    ModelSpec,
    assemble_green,
    front_speed_estimate,
    precursor_energy,
    synth_shell,
)
from attenuwave.exceptions import TailFloorError
from attenuwave.synth import dc_mass, shell_spectrum


def powerlaw_grid(gamma, n=2**16, target=25.3):
    """Band sized so exp(-alpha(omega_max)) ~ 1e-11 for alpha0 = r = 1."""
    return FrequencyGrid(n=n, domega=2.0 * target ** (1.0 / gamma) / n)


class TestSynthShell:
    def test_pure_delay_is_one_sample(self):
        # alpha* = -i*omega*d synthesizes to a single sample at t = +d: the
        # shell of a model slower than its bound speed arrives late
        g = FrequencyGrid(n=2**12, domega=0.05)
        d = 16 * g.dt
        m = ModelSpec(kind="KowarModified", gamma=1.5, tau0=0.0, c0=1.0, c1=1.0 / d)
        sh = synth_shell(m, 1.0, g)
        j = int(np.argmax(np.abs(sh.samples)))
        assert sh.times()[j] == pytest.approx(d, abs=1e-12)
        rest = np.delete(np.abs(sh.samples), j)
        assert np.max(rest) < 1e-10 * abs(sh.samples[j])

    def test_causal_powerlaw_supported_in_positive_time(self):
        # gamma = 0.5: the long stable-law tail needs a large window before
        # wrap-around stops polluting the precursor measurement
        m = ModelSpec(kind="PowerLaw", gamma=0.5, alpha0=1.0, omega0=0.0, c0=1.0)
        g = powerlaw_grid(0.5, n=2**19)
        sh = synth_shell(m, 1.0, g)
        assert sh.meta["tail_value"] < 1e-10
        assert precursor_energy(sh, eps=8 * g.dt) < 1e-6

    def test_thermoviscous_has_genuine_precursor(self, thermoviscous):
        m = ModelSpec(kind="ThermoViscous", tau0=0.1, c0=1.0)
        g = FrequencyGrid(n=2**16, domega=0.05)
        sh = synth_shell(m, 1.0, g)
        pre = precursor_energy(sh, eps=8 * g.dt)
        assert pre > 100 * sh.meta["floor"]
        assert pre == pytest.approx(0.6063, rel=1e-3)  # frozen measured level

    def test_tail_floor_enforced(self, powerlaw_half):
        g = FrequencyGrid(n=2**10, domega=0.01)  # omega_max ~ 5, far too small
        with pytest.raises(TailFloorError):
            synth_shell(powerlaw_half, 1.0, g)
        sh = synth_shell(powerlaw_half, 1.0, g, taper=True)
        assert sh.meta["floor"] > 1e-10  # honest: leakage recorded

    def test_reality_residual(self, powerlaw_half):
        g = powerlaw_grid(0.5)
        sh = synth_shell(powerlaw_half, 1.0, g)
        assert sh.meta["imag_residual"] < 1e-12

    def test_parseval(self, powerlaw_half):
        g = powerlaw_grid(0.5)
        spec = shell_spectrum(powerlaw_half, 1.0, g)
        sh = synth_shell(powerlaw_half, 1.0, g)
        e_time = np.sum(sh.samples**2) * g.dt
        e_spec = np.sum(np.abs(spec) ** 2) * g.domega
        assert e_time == pytest.approx(e_spec, rel=1e-10)

    def test_dc_mass_identity(self):
        # sum * dt = sqrt(2*pi) * exp(-alpha*(0) * r), and alpha*(0) = 0
        m = ModelSpec(kind="KowarModified", gamma=2.0, tau0=0.5, c0=1.0, c1=1.0)
        g = FrequencyGrid(n=2**14, domega=0.2)
        sh = synth_shell(m, 2.0, g)
        assert dc_mass(sh) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-10)

    def test_rejects_nonpositive_radius(self, powerlaw_half, synth_grid):
        with pytest.raises(ValueError):
            synth_shell(powerlaw_half, 0.0, synth_grid)


class TestGridRefinement:
    def test_causal_precursor_stays_small_noncausal_converges(self):
        causal = ModelSpec(kind="PowerLaw", gamma=0.75, alpha0=1.0, omega0=0.0, c0=1.0)
        lossy = ModelSpec(kind="PowerLaw", gamma=1.5, alpha0=1.0, omega0=0.0, c0=1.0)
        pre = {}
        for n in (2**15, 2**16):
            for m, gamma in ((causal, 0.75), (lossy, 1.5)):
                g = powerlaw_grid(gamma, n=n)
                sh = synth_shell(m, 1.0, g)
                pre[(m.kind, m.gamma, n)] = precursor_energy(sh, eps=8 * g.dt)
        # causal: tiny at both resolutions, not growing under refinement
        a, b = pre[("PowerLaw", 0.75, 2**15)], pre[("PowerLaw", 0.75, 2**16)]
        assert a < 1e-6 and b < 1e-6 and b < 2 * a
        # non-causal: converges to a stable positive value
        a, b = pre[("PowerLaw", 1.5, 2**15)], pre[("PowerLaw", 1.5, 2**16)]
        assert b > 1e-3
        assert a == pytest.approx(b, rel=0.05)


class TestGreenField:
    def test_geometric_spreading_of_lossless_field(self):
        m = ModelSpec(kind="PowerLaw", gamma=0.5, alpha0=0.0, omega0=0.0, c0=2.0)
        g = FrequencyGrid(n=2**12, domega=0.05)
        field = assemble_green(m, np.array([1.0, 2.0, 4.0]), g)
        # shells are identical deltas at t=0; the field divides by 4*pi*r
        v1 = field.evaluate(1.0, 1.0 / 2.0)  # at travel time
        v2 = field.evaluate(2.0, 2.0 / 2.0)
        assert v1 / v2 == pytest.approx(2.0, rel=1e-9)

    def test_travel_time_metadata(self, kowar15, synth_grid):
        field = assemble_green(kowar15, np.array([0.5, 1.0, 2.0]), synth_grid)
        assert np.allclose(field.travel_time, [0.5, 1.0, 2.0])
        assert np.all(np.diff(field.travel_time) > 0)

    def test_evaluate_interpolates_between_radii(self):
        m = ModelSpec(kind="KowarModified", gamma=2.0, tau0=0.5, c0=1.0, c1=1.0)
        g = FrequencyGrid(n=2**14, domega=0.2)
        field = assemble_green(m, np.linspace(1.0, 2.0, 9), g)
        r = 1.0625  # midpoint of the first radius cell
        exact = synth_shell(m, r, g)
        t_probe = r / field.bound_speed + np.linspace(0.5, 3.0, 7)
        approx = field.evaluate(r, t_probe)
        direct = exact.value_at(t_probe - r) / (4 * np.pi * r)
        assert np.max(np.abs(approx - direct)) < 0.02 * np.max(np.abs(direct))

    def test_threads_match_serial(self, kowar15, synth_grid):
        radii = np.array([0.5, 1.0])
        a = assemble_green(kowar15, radii, synth_grid, threads=1)
        b = assemble_green(kowar15, radii, synth_grid, threads=2)
        for sa, sb in zip(a.shells, b.shells):
            assert np.array_equal(sa.samples, sb.samples)


class TestFrontSpeed:
    def test_pure_delay_estimate_exact(self):
        # tau0 = 0 modified model: shells are deltas at t = r/c1, so the
        # unshifted arrival slope gives 1/(1/v_B + 1/c1) exactly
        g = FrequencyGrid(n=2**14, domega=0.05)
        c0 = c1 = 2.0
        m = ModelSpec(kind="KowarModified", gamma=1.5, tau0=0.0, c0=c0, c1=c1)
        radii = np.array([16, 32, 64, 128]) * g.dt * c1
        field = assemble_green(m, radii, g)
        expected = 1.0 / (1.0 / c0 + 1.0 / c1)
        assert front_speed_estimate(field, 0.02) == pytest.approx(expected, rel=5e-3)

    def test_powerlaw_front_speed_is_reference_speed(self):
        # weak attenuation keeps the onset sharp; the taper carries the
        # band-edge mass the small alpha0 cannot decay below the floor
        m = ModelSpec(kind="PowerLaw", gamma=0.5, alpha0=0.05, omega0=0.0, c0=1.0)
        g = FrequencyGrid(n=2**16, domega=0.05)
        field = assemble_green(m, np.array([0.5, 1.0, 1.5, 2.0, 3.0]), g, taper=True)
        assert front_speed_estimate(field, 0.02) == pytest.approx(1.0, rel=0.01)

    def test_threshold_validation(self, kowar15, synth_grid):
        field = assemble_green(kowar15, np.array([0.5, 1.0, 2.0]), synth_grid)
        with pytest.raises(ValueError):
            front_speed_estimate(field, 0.7)
        with pytest.raises(ValueError):
            front_speed_estimate(
                assemble_green(kowar15, np.array([0.5, 1.0]), synth_grid), 0.1
            )
