import csv
import math

import numpy as np
import pytest

from crwscatter import (
    BranchPoint,
    InvalidDiscretization,
    LatticeTooSmall,
    LorentzianCavityParams,
    PerfectCavityParams,
    ToleranceNotMet,
    WaveguideParams,
    potential_resonant,
    spectral_density,
)
from crwscatter.oracle import (
    ModeDiscretization,
    WavepacketSpec,
    compare_oracle,
    compare_wavepacket,
    discretize_modes,
    evolve_wavepacket,
    pv_quadrature_potential,
    suggest_run,
)
from crwscatter.potential import spectral_weight

from conftest import packet_averaged

FIG2C = LorentzianCavityParams(10.0, 8.0, 1.0)
PACKET = WavepacketSpec(math.pi / 2, 15, -90)


class TestQuadrature:
    def test_resonance_matches_closed_form(self):
        q = pv_quadrature_potential(10.0, FIG2C, tol=1e-10)
        v = potential_resonant(FIG2C)
        assert abs(q.re - v.re) < 1e-9 and abs(q.im - v.im) < 1e-9

    def test_negative_energy(self):
        assert pv_quadrature_potential(-5.0, FIG2C).im == 0.0

    def test_linear_in_coupling(self):
        a = pv_quadrature_potential(7.0, LorentzianCavityParams(10.0, 1e-3, 1.0))
        b = pv_quadrature_potential(7.0, LorentzianCavityParams(10.0, 2e-3, 1.0))
        assert b.re == pytest.approx(2 * a.re, rel=1e-9)
        assert b.im == pytest.approx(2 * a.im, rel=1e-12)

    @pytest.mark.parametrize("e", [0.0, 1e-7, -1e-6])
    def test_branch_point(self, e):
        with pytest.raises(BranchPoint):
            pv_quadrature_potential(e, FIG2C)

    def test_tolerance_not_met(self):
        with pytest.raises(ToleranceNotMet) as info:
            pv_quadrature_potential(10.0, LorentzianCavityParams(10.0, 20.0, 0.1), tol=1e-300)
        assert info.value.achieved > 1e-300

    @pytest.mark.parametrize("e", [-4.0, 3.0, 10.0, 10.4, 17.0])
    def test_self_consistent_under_refinement(self, e):
        cav = LorentzianCavityParams(10.0, 20.0, 0.5)
        coarse = pv_quadrature_potential(e, cav, tol=1e-10)
        fine = pv_quadrature_potential(e, cav, tol=1e-12, cutoff=2 * (cav.omega_c + 50 * cav.gamma))
        assert abs(coarse.re - fine.re) < 1e-10
        assert abs(coarse.im - fine.im) < 1e-10


class TestCompareOracle:
    def test_fig3_grid(self):
        grid = np.linspace(2.05, 18, 60)
        for lam in (0.5, 20.0):
            report = compare_oracle(grid, LorentzianCavityParams(10.0, lam, 0.5))
            assert report.passed and report.points == 60

    def test_single_point(self):
        report = compare_oracle([10.0], FIG2C, tol=1e-9)
        assert report.passed
        assert report.max_abs_re < 1e-9 and report.max_abs_im < 1e-9

    def test_rejects_bad_grids(self):
        with pytest.raises(ValueError):
            compare_oracle([], FIG2C)
        with pytest.raises(ValueError):
            compare_oracle([1.0, 5e-4], FIG2C)


class TestDiscretization:
    def test_sum_rule(self):
        modes = discretize_modes(FIG2C, 2000)
        expected = spectral_weight(FIG2C, 0.0, FIG2C.omega_c + 50 * FIG2C.gamma)
        assert modes.weight == pytest.approx(expected, rel=0.01)
        assert len(modes) == 2000

    def test_midpoints_sample_density(self):
        modes = discretize_modes(FIG2C, 100, 60.0)
        dw = 0.6
        assert np.allclose(modes.frequencies, (np.arange(100) + 0.5) * dw, rtol=0, atol=1e-12)
        density = np.array([spectral_density(w, FIG2C) for w in modes.frequencies])
        assert np.allclose(modes.couplings**2 / dw, density, rtol=1e-14, atol=0)

    def test_narrow_limit_single_mode(self):
        eta, gamma = 0.1, 1e-5
        cav = LorentzianCavityParams.from_single_mode(eta, gamma, 10.0)
        modes = discretize_modes(cav, 201, 20.0, rule="cell")
        q = int(np.argmin(np.abs(modes.frequencies - 10.0)))
        assert modes.couplings[q] ** 2 == pytest.approx(cav.lam * cav.gamma / 2, rel=1e-3)
        assert modes.couplings[q] ** 2 / modes.weight > 0.999

    @pytest.mark.parametrize("count, omega_max", [(1, 60.0), (100, 15.0)])
    def test_invalid(self, count, omega_max):
        with pytest.raises(InvalidDiscretization):
            discretize_modes(FIG2C, count, omega_max)

    def test_invalid_rule(self):
        with pytest.raises(InvalidDiscretization):
            discretize_modes(FIG2C, 10, 60.0, rule="gauss")

    def test_frequencies_must_increase(self):
        with pytest.raises(InvalidDiscretization):
            ModeDiscretization(np.array([2.0, 1.0]), np.array([0.1, 0.1]))


class TestWavepacketSpec:
    @pytest.mark.parametrize("args", [(0.0, 15, -90), (math.pi, 15, -90), (1.0, 4, -90), (1.0, 15, -50)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            WavepacketSpec(*args)

    def test_normalized(self):
        psi = PACKET.amplitudes(np.arange(-300, 300, dtype=float))
        assert np.vdot(psi, psi).real == pytest.approx(1.0, abs=1e-14)


class TestEvolve:
    def test_free_propagation(self, wg4):
        modes = ModeDiscretization(np.linspace(1, 20, 50), np.zeros(50))
        out = evolve_wavepacket(wg4, modes, PACKET, 600)
        assert out.transmitted == pytest.approx(1.0, abs=1e-6)
        assert out.reflected < 1e-6 and out.retained < 1e-6

    def test_perfect_cavity_reflects(self, wg4):
        rep = compare_wavepacket(wg4, PerfectCavityParams(10.0, 3.0), PACKET)
        assert rep.outcome.transmitted < 0.05
        big_t, big_r = packet_averaged(wg4, PerfectCavityParams(10.0, 3.0), math.pi / 2, 15)
        assert rep.outcome.transmitted == pytest.approx(big_t, abs=1e-4)

    def test_hermitian_off_resonance_conserves(self, wg4):
        packet = WavepacketSpec(math.pi / 3, 15, -90)
        rep = compare_wavepacket(wg4, PerfectCavityParams(10.0, 1.0), packet)
        o = rep.outcome
        assert o.transmitted + o.reflected == pytest.approx(1.0, abs=1e-3)
        assert rep.passed

    def test_fig2c_against_stationary(self, wg4):
        rep = compare_wavepacket(wg4, FIG2C, PACKET, modes=2000, lattice_sites=600)
        assert rep.passed
        assert rep.outcome.norm_error < 1e-8
        # the residual deviation is the spread of T(k) across the packet
        big_t, big_r = packet_averaged(wg4, FIG2C, math.pi / 2, 15)
        assert rep.outcome.transmitted == pytest.approx(big_t, abs=1e-6)
        assert rep.outcome.reflected == pytest.approx(big_r, abs=1e-6)

    def test_mode_convergence(self, wg4):
        a = compare_wavepacket(wg4, FIG2C, PACKET, modes=2000).outcome
        b = compare_wavepacket(wg4, FIG2C, PACKET, modes=4000).outcome
        for x, y in ((a.transmitted, b.transmitted), (a.reflected, b.reflected), (a.retained, b.retained)):
            assert abs(x - y) < 0.005

    def test_width_convergence(self, wg4):
        narrow = compare_wavepacket(wg4, FIG2C, WavepacketSpec(math.pi / 2, 10, -60))
        wide = compare_wavepacket(wg4, FIG2C, WavepacketSpec(math.pi / 2, 20, -120))
        assert wide.deviations[0] <= narrow.deviations[0]

    def test_lattice_too_small(self, wg4):
        modes = discretize_modes(FIG2C, 500)
        with pytest.raises(LatticeTooSmall):
            evolve_wavepacket(wg4, modes, PACKET, 300, t_final=30.0)
        with pytest.raises(LatticeTooSmall):
            evolve_wavepacket(wg4, modes, PACKET, 200)

    def test_suggested_run_is_clean(self, wg4):
        n, t_final = suggest_run(wg4, PACKET)
        assert n >= 8 * PACKET.width_sites
        evolve_wavepacket(wg4, discretize_modes(FIG2C, 500), PACKET, n, t_final=t_final)

    def test_snapshot_dump(self, wg4, tmp_path):
        path = tmp_path / "snap.csv"
        modes = ModeDiscretization(np.array([10.0]), np.array([1.0]))
        evolve_wavepacket(wg4, modes, PACKET, 500, checkpoints=3, snapshot_path=path)
        with open(path) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 3 * 500
        times = sorted({float(r["time"]) for r in rows})
        assert len(times) == 3 and times[0] > 0
        for t in times:
            chain = sum(float(r["probability"]) for r in rows if float(r["time"]) == t)
            assert 0 < chain <= 1 + 1e-12
