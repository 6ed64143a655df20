import textwrap

import pytest

from cfpc.cli import main
from cfpc.harness import RAW_HEADER


def write_config(path, **overrides):
    values = dict(num_aps=6, antennas_per_ap=1, num_users=2, tau_p=2,
                  rng_seed=2)
    values.update(overrides)
    lines = "\n".join(f"{k} = {v}" for k, v in values.items())
    path.write_text(lines + "\n")
    return path


def test_run_success(tmp_path, capsys):
    cfg = write_config(tmp_path / "cfg.toml")
    out = tmp_path / "out"
    code = main(["run", "--config", str(cfg), "--realizations", "2",
                 "--schemes", "nppa,fppa", "--out", str(out)])
    assert code == 0
    raw = (out / "raw.csv").read_text().splitlines()
    assert raw[0] == RAW_HEADER
    assert (out / "summary.json").exists()


def test_seed_override_changes_output(tmp_path):
    cfg = write_config(tmp_path / "cfg.toml")
    for seed in (1, 2):
        main(["run", "--config", str(cfg), "--realizations", "1",
              "--schemes", "nppa", "--out", str(tmp_path / f"o{seed}"),
              "--seed", str(seed)])
    a = (tmp_path / "o1" / "raw.csv").read_bytes()
    b = (tmp_path / "o2" / "raw.csv").read_bytes()
    assert a != b


def test_unknown_config_key_is_config_error(tmp_path):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text(textwrap.dedent("""
        num_aps = 6
        antennas_per_ap = 1
        num_users = 2
        tau_p = 2
        not_a_real_key = 5
    """))
    assert main(["run", "--config", str(cfg)]) == 2


def test_missing_file_is_config_error(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.toml")]) == 2


def test_bad_scheme_is_config_error(tmp_path):
    cfg = write_config(tmp_path / "cfg.toml")
    assert main(["run", "--config", str(cfg), "--schemes", "zppa"]) == 2


def test_bad_sweep_is_config_error(tmp_path):
    cfg = write_config(tmp_path / "cfg.toml")
    assert main(["run", "--config", str(cfg), "--sweep", "10by2"]) == 2


def test_invalid_invariant_is_config_error(tmp_path):
    cfg = write_config(tmp_path / "cfg.toml", tau_p=300)  # exceeds tau_c
    assert main(["run", "--config", str(cfg)]) == 2


def test_infeasible_experiment_exit_code(tmp_path):
    # pilot floor above the per-symbol cap: CPPA's pilot stage can never fit
    cfg = write_config(tmp_path / "cfg.toml", epsilon_w=0.2)
    code = main(["run", "--config", str(cfg), "--realizations", "2",
                 "--schemes", "cppa", "--out", str(tmp_path / "out")])
    assert code == 3


def test_sweep_run(tmp_path):
    cfg = write_config(tmp_path / "cfg.toml")
    out = tmp_path / "out"
    code = main(["run", "--config", str(cfg), "--realizations", "1",
                 "--schemes", "nppa", "--out", str(out),
                 "--sweep", "6x1,3x2"])
    assert code == 0
    assert (out / "raw_6x1.csv").exists()


@pytest.mark.parametrize("metric", ["pooled", "minrate"])
def test_metric_flag(tmp_path, metric):
    cfg = write_config(tmp_path / "cfg.toml")
    code = main(["run", "--config", str(cfg), "--realizations", "1",
                 "--schemes", "nppa", "--out", str(tmp_path / "out"),
                 "--metric", metric])
    assert code == 0
