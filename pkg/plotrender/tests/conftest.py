import subprocess
import sys

import pytest


def make_sweep_csv(path, *args):
    subprocess.run(
        [sys.executable, "-m", "spindimer", "sweep", *args, "--out", str(path)],
        check=True,
        capture_output=True,
        text=True,
    )
    return path


@pytest.fixture(scope="session")
def small_csv(tmp_path_factory):
    """Finite-temperature 5x4 grid with every column populated but phase."""
    return make_sweep_csv(
        tmp_path_factory.mktemp("data") / "small.csv",
        "--x", "h:0:2:5", "--y", "d_ani:-1:1:4", "--t", "0.3", "--delta", "1",
    )


@pytest.fixture(scope="session")
def phase_csv(tmp_path_factory):
    """Zero-temperature grid where only negativity and phase are filled."""
    return make_sweep_csv(
        tmp_path_factory.mktemp("data") / "phase.csv",
        "--x", "h:0:3:4", "--y", "d_ani:-2:2:4", "--t", "0", "--delta", "1",
        "--quantities", "negativity,phase",
    )


@pytest.fixture(scope="session")
def zero_t_map_csv(tmp_path_factory):
    """Full-resolution zero-temperature negativity map (201x201)."""
    return make_sweep_csv(
        tmp_path_factory.mktemp("data") / "map.csv",
        "--x", "h:0:6:201", "--y", "d_ani:-6:6:201", "--t", "0", "--delta", "2",
        "--quantities", "negativity",
    )


@pytest.fixture(scope="session")
def steering_map_csv(tmp_path_factory):
    """Zero-temperature steering map whose values cross the 8/3 bound."""
    return make_sweep_csv(
        tmp_path_factory.mktemp("data") / "steering.csv",
        "--x", "h:0:6:41", "--y", "d_ani:-6:6:41", "--t", "0", "--delta", "2",
        "--quantities", "steering",
    )
