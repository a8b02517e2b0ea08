import numpy as np
import pytest

from attenuwave import (
    CauchyData,
    FrequencyGrid,
    ModelSpec,
    PointSourceSum,
    SourceTerm,
    TimeSignal,
    cauchy_source,
    precursor_energy,
    superpose,
    verify_cauchy,
)
from attenuwave.solve import attenuation_operator, earliest_travel_time


@pytest.fixture(scope="module")
def sgrid():
    return FrequencyGrid(n=2**14, domega=0.05)


def canonical(grid, samples):
    return TimeSignal(t0=-(grid.n // 2) * grid.dt, dt=grid.dt, samples=samples)


def gaussian_waveform(grid, center, width):
    t = grid.times()
    return canonical(grid, np.exp(-((t - center) ** 2) / (2 * width**2)))


def lossless(c0=1.0):
    return ModelSpec(kind="PowerLaw", gamma=0.5, alpha0=0.0, omega0=0.0, c0=c0)


class TestSuperpose:
    def test_free_space_delay_and_spreading(self, sgrid):
        # analytic oracle: the response is the waveform delayed by r/v_B and
        # scaled by the geometric factor (exact for a band-limited Gaussian)
        m = lossless(c0=2.0)
        wf = gaussian_waveform(sgrid, center=5.0, width=0.5)
        src = PointSourceSum(terms=(SourceTerm(np.zeros(3), 1.0, wf),))
        probe = np.array([3.0, 0.0, 0.0])
        (resp,) = superpose(m, src, [probe], sgrid)
        t = sgrid.times()
        expected = np.exp(-((t - 3.0 / 2.0 - 5.0) ** 2) / (2 * 0.5**2)) / (
            4 * np.pi * 3.0
        )
        assert np.max(np.abs(resp.samples - expected)) < 1e-9 * np.max(expected)

    def test_two_symmetric_sources_double_the_response(self, sgrid):
        m = lossless()
        wf = gaussian_waveform(sgrid, 5.0, 0.5)
        one = PointSourceSum(terms=(SourceTerm(np.array([2.0, 0, 0]), 1.0, wf),))
        two = PointSourceSum(
            terms=(
                SourceTerm(np.array([2.0, 0, 0]), 1.0, wf),
                SourceTerm(np.array([-2.0, 0, 0]), 1.0, wf),
            )
        )
        probe = np.zeros(3)
        (r1,) = superpose(m, one, [probe], sgrid)
        (r2,) = superpose(m, two, [probe], sgrid)
        assert np.allclose(r2.samples, 2 * r1.samples, atol=1e-12)

    def test_linearity_in_weights(self, sgrid, kowar15):
        wf = gaussian_waveform(sgrid, 5.0, 0.5)
        probe = np.array([0.0, 1.5, 0.0])
        base = PointSourceSum(terms=(SourceTerm(np.zeros(3), 1.0, wf),))
        scaled = PointSourceSum(terms=(SourceTerm(np.zeros(3), -2.5, wf),))
        (rb,) = superpose(kowar15, base, [probe], sgrid)
        (rs,) = superpose(kowar15, scaled, [probe], sgrid)
        assert np.allclose(rs.samples, -2.5 * rb.samples, atol=1e-14)

    def test_translation_covariance(self, sgrid, kowar15):
        wf = gaussian_waveform(sgrid, 5.0, 0.5)
        shift = np.array([1.0, -2.0, 3.0])
        src0 = PointSourceSum(terms=(SourceTerm(np.zeros(3), 1.0, wf),))
        src1 = PointSourceSum(terms=(SourceTerm(shift, 1.0, wf),))
        (r0,) = superpose(kowar15, src0, [np.array([2.0, 0, 0])], sgrid)
        (r1,) = superpose(kowar15, src1, [np.array([2.0, 0, 0]) + shift], sgrid)
        assert np.max(np.abs(r0.samples - r1.samples)) < 1e-12 * np.max(
            np.abs(r0.samples)
        )

    def test_probe_on_source_rejected(self, sgrid, kowar15):
        wf = gaussian_waveform(sgrid, 5.0, 0.5)
        src = PointSourceSum(terms=(SourceTerm(np.zeros(3), 1.0, wf),))
        with pytest.raises(ValueError):
            superpose(kowar15, src, [np.zeros(3)], sgrid)

    @pytest.mark.parametrize(
        "model,domega",
        [
            (ModelSpec(kind="KowarModified", gamma=1.5, tau0=1.0, c0=1.0, c1=1.0), 0.05),
            # the sub-unit power law trails off like t^(-1-gamma); the window
            # must outlast that tail or the wrap reads as precursor
            (ModelSpec(kind="PowerLaw", gamma=0.75, alpha0=1.0, omega0=0.0, c0=1.0), 0.0025),
        ],
    )
    def test_causality_inheritance(self, model, domega):
        # certified-causal models: response energy before the earliest travel
        # time stays at the floor
        grid = FrequencyGrid(n=2**16, domega=domega)
        wf = gaussian_waveform(grid, 5.0, 0.5)
        src = PointSourceSum(terms=(SourceTerm(np.zeros(3), 1.0, wf),))
        probe = np.array([2.0, 0.0, 0.0])
        (resp,) = superpose(model, src, [probe], grid)
        t_min = earliest_travel_time(src, probe, model.bound_speed)
        assert precursor_energy(resp, eps=8 * grid.dt, origin=t_min) < 1e-6


class TestCauchyData:
    def test_from_history_computes_endpoint_data(self, sgrid):
        t = sgrid.times()
        q = canonical(sgrid, np.where(t <= 0, t * np.exp(t), 0.0))
        data = CauchyData.from_history(q)
        assert data.phi == pytest.approx(0.0, abs=1e-12)
        assert data.psi == pytest.approx(1.0, abs=1e-4)

    def test_rejects_future_support(self, sgrid):
        t = sgrid.times()
        q = canonical(sgrid, np.exp(-((t - 1.0) ** 2)))
        with pytest.raises(ValueError):
            CauchyData.from_history(q)

    def test_rejects_inconsistent_psi(self, sgrid):
        t = sgrid.times()
        q = canonical(sgrid, np.where(t <= 0, t * np.exp(t), 0.0))
        with pytest.raises(ValueError):
            CauchyData(q=q, phi=0.0, psi=5.0)

    def test_rejects_rough_history(self, sgrid):
        t = sgrid.times()
        rng = np.random.default_rng(5)
        rough = np.where(t <= 0, np.exp(t) * (1 + 0.5 * rng.normal(size=t.size)), 0.0)
        with pytest.raises(ValueError):
            CauchyData.from_history(canonical(sgrid, rough))


class TestCauchySource:
    def test_zero_history_gives_zero_source(self, sgrid, kowar15):
        data = CauchyData(q=canonical(sgrid, np.zeros(sgrid.n)), phi=0.0, psi=0.0)
        src = cauchy_source(data, kowar15, sgrid)
        assert np.all(src.samples == 0.0)

    def test_zero_attenuation_endpoint_stencils(self, sgrid):
        # q = t*exp(t) on t <= 0: phi = 0, psi = 1, and with no attenuation
        # the source reduces to the endpoint delta: one sample -psi/(v^2 dt)
        m = lossless(c0=2.0)
        t = sgrid.times()
        q = canonical(sgrid, np.where(t <= 0, t * np.exp(t), 0.0))
        data = CauchyData.from_history(q)
        src = cauchy_source(data, m, sgrid)
        j0 = sgrid.n // 2
        expected_delta = -data.psi / (2.0**2 * sgrid.dt)
        assert src.samples[j0] == pytest.approx(expected_delta, rel=1e-4)
        # delta' stencil is antisymmetric and vanishes here since phi = 0
        assert abs(src.samples[j0 - 1] + src.samples[j0 + 1]) < 1e-10 * abs(
            expected_delta
        )

    def test_phi_enters_antisymmetric_stencil(self, sgrid):
        m = lossless(c0=1.0)
        t = sgrid.times()
        q = canonical(sgrid, np.where(t <= 0, np.exp(t), 0.0))  # phi = 1, psi = 1
        data = CauchyData.from_history(q)
        src = cauchy_source(data, m, sgrid)
        j0 = sgrid.n // 2
        stencil = -data.phi / (2 * sgrid.dt**2)
        assert src.samples[j0 - 1] == pytest.approx(stencil, rel=1e-2)
        assert src.samples[j0 + 1] == pytest.approx(-stencil, rel=1e-2)

    @pytest.mark.parametrize(
        "model",
        [
            ModelSpec(kind="KowarModified", gamma=2.0, tau0=0.5, c0=1.0, c1=1.0),
            ModelSpec(kind="KowarModified", gamma=1.5, tau0=1.0, c0=1.0, c1=1.0),
        ],
    )
    def test_commutator_supported_in_positive_time(self, sgrid, model):
        t = sgrid.times()
        q = canonical(sgrid, np.where(t <= 0, t * np.exp(t / 2.0), 0.0))
        data = CauchyData.from_history(q)
        src = cauchy_source(data, model, sgrid)
        comm = TimeSignal(t0=src.t0, dt=src.dt, samples=src.meta["commutator"])
        assert precursor_energy(comm, eps=8 * sgrid.dt) < 1e-10


class TestVerifyCauchy:
    def make_data(self, grid):
        t = grid.times()
        q = canonical(grid, np.where(t <= 0, t * np.exp(t), 0.0))
        return CauchyData.from_history(q)

    def test_zero_data_zero_residual(self, sgrid, kowar15):
        data = CauchyData(q=canonical(sgrid, np.zeros(sgrid.n)), phi=0.0, psi=0.0)
        assert verify_cauchy(kowar15, data, sgrid) == 0.0

    def test_pure_delay_model(self, sgrid):
        m = ModelSpec(kind="KowarModified", gamma=1.5, tau0=0.0, c0=2.0, c1=2.0)
        assert verify_cauchy(m, self.make_data(sgrid), sgrid) <= 1e-6

    def test_kowar_gamma2(self, sgrid):
        m = ModelSpec(kind="KowarModified", gamma=2.0, tau0=0.5, c0=1.0, c1=1.0)
        assert verify_cauchy(m, self.make_data(sgrid), sgrid) <= 1e-6

    def test_operator_assembly_is_exact_square(self, sgrid, kowar15):
        # the kernel-algebra route plus the plain second derivative equals
        # the squared radial multiplier pointwise
        from attenuwave import alpha_star

        w = sgrid.omegas()
        a = alpha_star(kowar15, w.astype(complex))
        lam2 = (a - 1j * w / kowar15.bound_speed) ** 2
        w_kern = attenuation_operator(kowar15)(w) + (-1j * w) ** 2 / kowar15.bound_speed**2
        assert np.max(np.abs(lam2 - w_kern)) < 1e-12 * np.max(1 + np.abs(lam2))
