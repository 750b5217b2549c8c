import json

import numpy as np
import pytest

import spindimer.sweep as sweep
from spindimer.measures import coherence_l1
from spindimer.sweep import (
    CSV_HEADER,
    QUANTITIES,
    GridSpec,
    SweepAxis,
    SweepError,
    canonical_spec_json,
    run_sweep,
    spec_seed,
    write_table,
)


def small_finite_t_spec(quantities=QUANTITIES[:4]):
    return GridSpec(
        axis_x=SweepAxis("h", 0.0, 2.0, 4),
        axis_y=SweepAxis("d_ani", -1.0, 1.0, 3),
        t=0.3,
        delta=1.0,
        quantities=quantities,
    )


def small_zero_t_spec(quantities=QUANTITIES):
    return GridSpec(
        axis_x=SweepAxis("h", 0.0, 3.0, 5),
        axis_y=SweepAxis("d_ani", -2.0, 2.0, 5),
        t=0.0,
        delta=1.0,
        quantities=quantities,
    )


class TestSweepAxis:
    def test_grid_is_inclusive_linspace(self):
        axis = SweepAxis("h", 0.0, 1.0, 5)
        assert np.array_equal(axis.grid(), np.linspace(0.0, 1.0, 5))

    def test_rejects_unknown_parameter(self):
        with pytest.raises(ValueError):
            SweepAxis("gamma", 0.0, 1.0, 5)

    def test_rejects_single_step(self):
        with pytest.raises(ValueError):
            SweepAxis("h", 0.0, 1.0, 1)

    def test_rejects_inverted_bounds(self):
        with pytest.raises(ValueError):
            SweepAxis("h", 1.0, 1.0, 5)
        with pytest.raises(ValueError):
            SweepAxis("h", 2.0, 1.0, 5)

    def test_rejects_nonfinite_bounds(self):
        with pytest.raises(ValueError):
            SweepAxis("h", 0.0, float("inf"), 5)

    def test_temperature_axis_must_stay_positive(self):
        with pytest.raises(ValueError):
            SweepAxis("t", 0.0, 1.0, 5)
        assert SweepAxis("t", 0.01, 1.0, 5).min == 0.01


class TestGridSpec:
    def test_rejects_same_axis_twice(self):
        with pytest.raises(ValueError):
            GridSpec(
                axis_x=SweepAxis("h", 0.0, 1.0, 3),
                axis_y=SweepAxis("h", 2.0, 3.0, 3),
            )

    def test_rejects_unknown_quantity(self):
        with pytest.raises(ValueError):
            small_finite_t_spec(quantities=("c_l1", "entropy"))

    def test_rejects_duplicate_quantity(self):
        with pytest.raises(ValueError):
            small_finite_t_spec(quantities=("c_l1", "c_l1"))

    def test_rejects_empty_quantities(self):
        with pytest.raises(ValueError):
            small_finite_t_spec(quantities=())

    def test_rejects_nonpositive_coupling(self):
        with pytest.raises(ValueError):
            GridSpec(
                axis_x=SweepAxis("h", 0.0, 1.0, 3),
                axis_y=SweepAxis("d_ani", 0.0, 1.0, 3),
                j=0.0,
            )

    def test_rejects_negative_fixed_temperature(self):
        with pytest.raises(ValueError):
            GridSpec(
                axis_x=SweepAxis("h", 0.0, 1.0, 3),
                axis_y=SweepAxis("d_ani", 0.0, 1.0, 3),
                t=-0.1,
            )

    def test_rejects_negative_degeneracy_tol(self):
        with pytest.raises(ValueError):
            GridSpec(
                axis_x=SweepAxis("h", 0.0, 1.0, 3),
                axis_y=SweepAxis("d_ani", 0.0, 1.0, 3),
                degeneracy_tol=-1e-9,
            )

    def test_zero_t_property(self):
        assert small_zero_t_spec().zero_t
        assert not small_finite_t_spec().zero_t
        swept_t = GridSpec(
            axis_x=SweepAxis("t", 0.05, 1.0, 3),
            axis_y=SweepAxis("h", 0.0, 1.0, 3),
        )
        assert not swept_t.zero_t

    def test_dict_round_trip(self):
        spec = small_zero_t_spec(quantities=("negativity", "phase"))
        assert GridSpec.from_dict(spec.to_dict()) == spec

    def test_from_dict_rejects_unknown_keys(self):
        data = small_finite_t_spec().to_dict()
        data["extra"] = 1
        with pytest.raises(ValueError):
            GridSpec.from_dict(data)


class TestSpecSeed:
    def test_stable_for_equal_specs(self):
        assert spec_seed(small_finite_t_spec()) == spec_seed(small_finite_t_spec())
        assert canonical_spec_json(small_finite_t_spec()) == canonical_spec_json(
            small_finite_t_spec()
        )

    def test_sensitive_to_spec_changes(self):
        base = small_finite_t_spec()
        warmer = GridSpec(
            axis_x=base.axis_x,
            axis_y=base.axis_y,
            t=0.4,
            delta=base.delta,
            quantities=base.quantities,
        )
        finer = GridSpec.from_dict(
            {**base.to_dict(), "axis_x": {"name": "h", "min": 0.0, "max": 2.0, "steps": 5}}
        )
        assert len({spec_seed(base), spec_seed(warmer), spec_seed(finer)}) == 3

    def test_range(self):
        s = spec_seed(small_zero_t_spec())
        assert 0 <= s < 2**64


class TestRunSweep:
    def test_row_ordering_is_x_major(self):
        spec = small_finite_t_spec(quantities=("negativity",))
        result = run_sweep(spec)
        xs = spec.axis_x.grid()
        ys = spec.axis_y.grid()
        assert np.array_equal(result.x, np.repeat(xs, ys.size))
        assert np.array_equal(result.y, np.tile(ys, xs.size))

    def test_only_requested_columns_present(self):
        result = run_sweep(small_finite_t_spec(quantities=("c_r", "steering")))
        assert set(result.values) == {"c_r", "steering_s"}
        assert result.steerable is not None
        assert result.phase is None

    def test_workers_validation(self):
        spec = small_finite_t_spec(quantities=("negativity",))
        with pytest.raises(ValueError):
            run_sweep(spec, workers=0)
        with pytest.raises(ValueError):
            run_sweep(spec, workers=1.5)

    def test_phase_fills_only_on_zero_t_plane(self):
        zero = run_sweep(small_zero_t_spec())
        assert zero.phase is not None
        assert set(zero.phase) <= {"RegionI", "RegionII", "RegionIII", "Unclassified"}
        finite = run_sweep(small_finite_t_spec(quantities=("negativity", "phase")))
        assert finite.phase is None

    def test_degeneracy_flag_only_at_zero_t(self):
        zero = run_sweep(small_zero_t_spec())
        assert zero.degenerate is not None
        assert zero.degenerate.dtype == bool
        finite = run_sweep(small_finite_t_spec())
        assert finite.degenerate is None

    def test_phase_only_request_still_cross_checked(self):
        result = run_sweep(small_zero_t_spec(quantities=("phase",)))
        assert set(result.values) == set()
        assert result.phase is not None
        assert result.metadata["subsample_points"] >= 1

    def test_subsample_metadata(self):
        result = run_sweep(small_finite_t_spec())
        meta = result.metadata
        assert meta["points"] == 12
        assert meta["subsample_points"] >= 1
        assert 0.0 <= meta["subsample_max_deviation"] <= 1e-9

    def test_swept_temperature_axis(self):
        spec = GridSpec(
            axis_x=SweepAxis("t", 0.05, 1.0, 4),
            axis_y=SweepAxis("h", 0.0, 2.0, 3),
            delta=1.0,
            quantities=("c_l1", "negativity"),
        )
        result = run_sweep(spec)
        assert result.values["c_l1"].shape == (12,)
        assert np.isfinite(result.values["c_l1"]).all()


class TestDeterminism:
    def test_repeat_runs_are_byte_identical(self, tmp_path):
        spec = small_finite_t_spec()
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_table(run_sweep(spec), str(a))
        write_table(run_sweep(spec), str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_worker_count_does_not_change_output(self, tmp_path):
        spec = small_zero_t_spec()
        a, b = tmp_path / "w1.csv", tmp_path / "w2.csv"
        write_table(run_sweep(spec, workers=1), str(a))
        write_table(run_sweep(spec, workers=2), str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_chunk_size_does_not_change_output(self, tmp_path, monkeypatch):
        spec = small_finite_t_spec()
        a, b = tmp_path / "whole.csv", tmp_path / "chunked.csv"
        write_table(run_sweep(spec), str(a))
        monkeypatch.setattr(sweep, "_CHUNK", 5)
        write_table(run_sweep(spec), str(b))
        assert a.read_bytes() == b.read_bytes()


class TestSubsampleGuard:
    def test_divergent_reference_route_raises(self, monkeypatch):
        monkeypatch.setattr(sweep, "coherence_l1", lambda rho: coherence_l1(rho) + 1e-6)
        with pytest.raises(SweepError):
            run_sweep(small_finite_t_spec(quantities=("c_l1",)))


class TestSerialization:
    def test_header_is_frozen(self):
        assert CSV_HEADER == "x_name,y_name,c_l1,c_r,negativity,steering_s,steerable,phase"

    def test_csv_shape_and_header(self, tmp_path):
        path = tmp_path / "out.csv"
        write_table(run_sweep(small_finite_t_spec()), str(path))
        raw = path.read_bytes()
        assert raw.endswith(b"\n")
        assert b"\r" not in raw
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 12

    def test_csv_cells_round_trip(self, tmp_path):
        spec = small_finite_t_spec()
        result = run_sweep(spec)
        path = tmp_path / "out.csv"
        write_table(result, str(path))
        lines = path.read_text(encoding="utf-8").splitlines()[1:]
        for i, line in enumerate(lines):
            cells = line.split(",")
            assert float(cells[0]) == pytest.approx(result.x[i], rel=1e-11)
            assert float(cells[2]) == pytest.approx(result.values["c_l1"][i], rel=1e-11, abs=1e-11)
            assert float(cells[5]) == pytest.approx(
                result.values["steering_s"][i], rel=1e-11, abs=1e-11
            )
            assert cells[6] in ("true", "false")
            assert cells[7] == ""

    def test_csv_leaves_unrequested_columns_empty(self, tmp_path):
        path = tmp_path / "out.csv"
        write_table(run_sweep(small_finite_t_spec(quantities=("negativity",))), str(path))
        lines = path.read_text(encoding="utf-8").splitlines()[1:]
        for line in lines:
            cells = line.split(",")
            assert cells[2] == "" and cells[3] == "" and cells[5] == ""
            assert cells[6] == "" and cells[7] == ""
            assert cells[4] != ""

    def test_json_payload(self, tmp_path):
        spec = small_zero_t_spec()
        result = run_sweep(spec)
        path = tmp_path / "out.json"
        write_table(result, str(path), fmt="json")
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["schema_version"] == "1"
        assert GridSpec.from_dict(payload["spec"]) == spec
        assert payload["metadata"]["points"] == 25
        row = payload["rows"][0]
        assert set(row) == {
            "x",
            "y",
            "c_l1",
            "c_r",
            "negativity",
            "steering_s",
            "steerable",
            "phase",
            "degenerate",
        }
        assert isinstance(row["degenerate"], bool)

    def test_json_omits_degeneracy_at_finite_t(self, tmp_path):
        path = tmp_path / "out.json"
        write_table(run_sweep(small_finite_t_spec()), str(path), fmt="json")
        payload = json.loads(path.read_text(encoding="utf-8"))
        row = payload["rows"][0]
        assert "degenerate" not in row
        assert row["phase"] is None

    def test_rejects_unknown_format(self, tmp_path):
        result = run_sweep(small_finite_t_spec(quantities=("negativity",)))
        with pytest.raises(ValueError):
            write_table(result, str(tmp_path / "x.bin"), fmt="bin")
