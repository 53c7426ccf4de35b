import os
from pathlib import Path

import pytest

from adjfactor import (
    ExperimentConfig,
    GrowthConfig,
    generate_pa_tf,
    run_experiment,
    write_edge_list,
)

# deterministic stand-in for a real communication network: committed by seed,
# sized so the full pipeline runs in seconds
SYNTHETIC_INPUT = dict(n=600, n0=3, m=2, p_t=0.45, seed=11)


@pytest.fixture(scope="session")
def synthetic_input(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("data") / "synthetic_net.txt"
    write_edge_list(generate_pa_tf(GrowthConfig(**SYNTHETIC_INPUT)), path)
    return path


def small_experiment_config(input_path: Path, out_dir: Path, **overrides) -> ExperimentConfig:
    options = dict(
        datasets=[str(input_path)],
        out_dir=out_dir,
        replicas=3,
        seed=5,
        calibration_pilots=3,
        calibration_tolerance=0.02,
    )
    options.update(overrides)
    return ExperimentConfig(**options)


@pytest.fixture(scope="session")
def experiment_run(synthetic_input, tmp_path_factory):
    """One shared full-pipeline run: (report, out_dir, exit_code)."""
    out_dir = tmp_path_factory.mktemp("experiment") / "out"
    report, code = run_experiment(small_experiment_config(synthetic_input, out_dir))
    return report, out_dir, code


def find_dataset(name_fragment: str) -> Path | None:
    """Locate a real dataset under ADJFACTOR_DATA_DIR, if the user provides one."""
    root = os.environ.get("ADJFACTOR_DATA_DIR")
    if not root:
        return None
    base = Path(root)
    if not base.is_dir():
        return None
    for path in sorted(base.rglob("*")):
        if path.is_file() and name_fragment in path.name.lower().replace("_", "-"):
            return path
    return None
