"""End-to-end acceptance checks.

Each test states a claimed property of the toolkit at its published
tolerance. Two properties of the zero-temperature phase diagram and one
temperature cutoff are asserted exactly as claimed and are expected to
fail; see README.md ("Known failing acceptance checks") for the measured
values and the physics behind them. Do not loosen these tolerances.
"""

import json
import math
import re
import subprocess
import sys

import numpy as np
import pytest

from spindimer.measures import (
    coherence_l1,
    coherence_relative,
    negativity,
    resource_report,
)
from spindimer.model import ModelParams, analytic_spectrum, build_hamiltonian
from spindimer.steering import steering_value
from spindimer.sweep import GridSpec, SweepAxis, run_sweep, write_table
from spindimer.thermal import gibbs_closed_form, gibbs_oracle, ground_state, partition_function

ENSEMBLE_SEED = 20260819
MIXED_STEERING = 16.0 / 3.0 - 3.0 * math.log2(3.0)

FIG1_DELTAS = (0.5, 1.0, 2.0)


def fig1_spec(delta):
    return GridSpec(
        axis_x=SweepAxis("h", 0.0, 6.0, 201),
        axis_y=SweepAxis("d_ani", -6.0, 6.0, 201),
        t=0.0,
        delta=delta,
        quantities=("c_l1", "c_r", "negativity", "steering", "phase"),
    )


def cutoff_spec():
    return GridSpec(
        axis_x=SweepAxis("t", 0.05, 1.2, 24),
        axis_y=SweepAxis("h", 0.0, 5.0, 101),
        delta=2.0,
        d_ani=-3.0,
        quantities=("c_l1", "c_r", "negativity", "steering"),
    )


def mirrored_field_spec(t):
    quantities = ("c_l1", "c_r", "negativity", "steering")
    if t == 0.0:
        quantities = quantities + ("phase",)
    return GridSpec(
        axis_x=SweepAxis("h", -3.0, 3.0, 13),
        axis_y=SweepAxis("d_ani", -2.0, 2.0, 5),
        t=t,
        delta=1.0,
        quantities=quantities,
    )


@pytest.fixture(scope="session")
def random_draws():
    rng = np.random.default_rng(ENSEMBLE_SEED)
    draws = []
    for _ in range(1000):
        delta, d_ani, h = rng.uniform(-4.0, 4.0, 3)
        params = ModelParams(j=1.0, delta=float(delta), d_ani=float(d_ani), h=float(h))
        draws.append((params, float(rng.uniform(0.05, 5.0))))
    return draws


@pytest.fixture(scope="session")
def fig1_sweeps():
    return {delta: run_sweep(fig1_spec(delta), workers=2) for delta in FIG1_DELTAS}


@pytest.fixture(scope="session")
def cutoff_sweep():
    return run_sweep(cutoff_spec())


@pytest.fixture(scope="session")
def mirrored_sweeps():
    return {t: run_sweep(mirrored_field_spec(t)) for t in (0.0, 0.15)}


def all_acceptance_results(fig1_sweeps, cutoff_sweep, mirrored_sweeps):
    return list(fig1_sweeps.values()) + [cutoff_sweep] + list(mirrored_sweeps.values())


class TestThermalStateEquivalence:
    def test_closed_form_matches_spectral_oracle(self, random_draws):
        max_rho_dev = 0.0
        max_z_dev = 0.0
        for params, t in random_draws:
            closed = gibbs_closed_form(params, t)
            oracle = gibbs_oracle(params, t)
            max_rho_dev = max(max_rho_dev, float(np.abs(closed.rho - oracle.rho).max()))
            z_trace = oracle.z
            max_z_dev = max(max_z_dev, abs(partition_function(params, t) - z_trace) / z_trace)
        assert max_rho_dev <= 1e-10, f"state deviation {max_rho_dev:.3e}"
        assert max_z_dev <= 1e-12, f"relative normalization deviation {max_z_dev:.3e}"


class TestSpectrumEquivalence:
    def test_analytic_levels_match_numeric_diagonalization(self, random_draws):
        max_multiset_dev = 0.0
        max_residual = 0.0
        for params, _ in random_draws:
            spectrum = analytic_spectrum(params)
            ham = build_hamiltonian(params)
            numeric = np.linalg.eigvalsh(ham)
            multiset_dev = float(np.abs(np.sort(spectrum.energies) - numeric).max())
            max_multiset_dev = max(max_multiset_dev, multiset_dev / params.j)
            residual = float(
                np.abs(ham @ spectrum.vectors - spectrum.vectors * spectrum.energies).max()
            )
            max_residual = max(max_residual, residual / float(np.abs(spectrum.energies).max()))
        assert max_multiset_dev <= 1e-10, f"multiset deviation {max_multiset_dev:.3e}"
        assert max_residual <= 1e-10, f"eigen-equation residual {max_residual:.3e}"


class TestMaximallyEntangledGroundState:
    def test_isotropic_zero_field_point(self):
        state = ground_state(ModelParams(j=1.0, delta=1.0))
        report = resource_report(state)
        assert report.negativity == pytest.approx(1.0, abs=1e-9)
        assert report.c_l1 == pytest.approx(2.0, abs=1e-9)
        assert report.c_r == pytest.approx(math.log2(3.0), abs=1e-9)
        assert report.steering_s == pytest.approx(16.0 / 3.0, abs=1e-9)
        assert report.steerable


def plateau_membership(neg):
    """Boolean mask: negativity within 1e-6 of one of the plateau values."""
    levels = np.array([0.0, 0.5, 1.0])
    return (np.abs(neg[..., None] - levels) <= 1e-6).any(axis=-1)


def interior_mask(neg, degenerate):
    """Exclude plateau-boundary pixels (4-neighbor label changes) and
    degenerate ground-state pixels."""
    labels = np.abs(neg[..., None] - np.array([0.0, 0.5, 1.0])).argmin(axis=-1)
    boundary = np.zeros(labels.shape, dtype=bool)
    boundary[:-1, :] |= labels[:-1, :] != labels[1:, :]
    boundary[1:, :] |= labels[1:, :] != labels[:-1, :]
    boundary[:, :-1] |= labels[:, :-1] != labels[:, 1:]
    boundary[:, 1:] |= labels[:, 1:] != labels[:, :-1]
    return ~(boundary | degenerate)


class TestZeroTemperaturePlateaus:
    def test_negativity_plateau_coverage(self, fig1_sweeps):
        # Claimed: away from phase boundaries the ground-state negativity
        # sits on {0, 0.5, 1} at >= 99% of grid points. The intermediate
        # ground state (1, lambda_plus, 1)/norm interpolates continuously,
        # so large regions sit between plateaus; see README.
        coverage = {}
        for delta, result in fig1_sweeps.items():
            neg = result.values["negativity"].reshape(201, 201)
            degenerate = result.degenerate.reshape(201, 201)
            interior = interior_mask(neg, degenerate)
            coverage[delta] = float(plateau_membership(neg)[interior].mean())
        assert all(frac >= 0.99 for frac in coverage.values()), (
            "plateau coverage (excluding boundary and degenerate pixels) "
            + ", ".join(f"{d}: {f:.4f}" for d, f in sorted(coverage.items()))
        )

    def test_maximally_entangled_area_grows_with_exchange_anisotropy(self, fig1_sweeps):
        # Claimed: the unit-negativity region is strictly largest at the
        # strongest exchange anisotropy. The unit plateau is actually the
        # measure-zero locus delta - 2*d_ani = j, so pixel counts depend
        # only on whether that line hits the grid; see README.
        areas = {}
        for delta, result in fig1_sweeps.items():
            neg = result.values["negativity"]
            degenerate = result.degenerate
            areas[delta] = int((np.abs(neg - 1.0) <= 1e-6)[~degenerate].sum())
        assert areas[2.0] > areas[0.5] and areas[2.0] > areas[1.0], (
            "unit-negativity pixel counts " + ", ".join(f"{d}: {n}" for d, n in sorted(areas.items()))
        )


class TestTemperatureCutoffs:
    def test_steering_vanishes_above_cutoff(self, cutoff_sweep):
        t = cutoff_sweep.x
        hot = t >= 0.35 - 1e-12
        steerable_hot = cutoff_sweep.steerable[hot]
        s_hot = cutoff_sweep.values["steering_s"][hot]
        assert not steerable_hot.any(), (
            f"steerable points above cutoff, max steering value {s_hot.max():.6f}"
        )

    def test_relative_coherence_vanishes_above_cutoff(self, cutoff_sweep):
        # Claimed: c_r <= 0.02 everywhere above t = 0.45. The thermal
        # coherence decays like 1/t here and is still ~0.16 at the cutoff;
        # see README.
        t = cutoff_sweep.x
        hot = t >= 0.45 - 1e-12
        c_r_hot = cutoff_sweep.values["c_r"][hot]
        worst = int(np.argmax(c_r_hot))
        assert c_r_hot.max() <= 0.02, (
            f"max c_r above cutoff is {c_r_hot.max():.8f} at "
            f"t={cutoff_sweep.x[hot][worst]:.3f}, h={cutoff_sweep.y[hot][worst]:.3f}"
        )


class TestHierarchy:
    def test_no_steering_without_entanglement(self, fig1_sweeps, cutoff_sweep, mirrored_sweeps):
        checked = 0
        for result in all_acceptance_results(fig1_sweeps, cutoff_sweep, mirrored_sweeps):
            steerable = result.steerable
            neg = result.values["negativity"]
            if steerable.any():
                checked += int(steerable.sum())
                assert neg[steerable].min() > 1e-9
        assert checked > 0


class TestFieldSymmetry:
    def test_quantifiers_even_in_field(self, mirrored_sweeps):
        for result in mirrored_sweeps.values():
            nx, ny = result.spec.axis_x.steps, result.spec.axis_y.steps
            for column in result.values.values():
                grid = column.reshape(nx, ny)
                assert np.abs(grid - grid[::-1, :]).max() <= 1e-9


class TestHighTemperatureLimit:
    def test_approach_to_maximally_mixed(self):
        rng = np.random.default_rng(424242)
        for _ in range(25):
            delta, d_ani, h = rng.uniform(-4.0, 4.0, 3)
            params = ModelParams(j=1.0, delta=float(delta), d_ani=float(d_ani), h=float(h))
            state = gibbs_closed_form(params, 100.0)
            assert coherence_l1(state.rho) < 1e-2
            assert coherence_relative(state.rho) < 1e-2
            assert negativity(state.rho) < 1e-2
            s_value = steering_value(state.rho).s_value
            assert abs(s_value - MIXED_STEERING) < 1e-2


class TestVerificationReport:
    def test_emits_negativity_closed_form_gap(self):
        proc = subprocess.run(
            [sys.executable, "-m", "spindimer", "verify", "--n", "300", "--seed", "7139"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        match = re.search(
            r"negativity_block_norm_gap\s+max dev ([0-9.e+-]+)\s+\(informational", proc.stdout
        )
        assert match, proc.stdout
        assert float(match.group(1)) >= 0.0
        assert "overall: PASS" in proc.stdout


class TestDeterminism:
    def test_byte_identical_across_runs_and_workers(self, cutoff_sweep, tmp_path):
        baseline = tmp_path / "baseline.csv"
        write_table(cutoff_sweep, str(baseline))
        for run, workers in enumerate((1, 3)):
            again = tmp_path / f"again{run}.csv"
            write_table(run_sweep(cutoff_spec(), workers=workers), str(again))
            assert again.read_bytes() == baseline.read_bytes(), f"workers={workers}"

    def test_json_metadata_reports_reproducible_spec(self, cutoff_sweep, tmp_path):
        path = tmp_path / "sweep.json"
        write_table(cutoff_sweep, str(path), fmt="json")
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert GridSpec.from_dict(payload["spec"]) == cutoff_spec()
