import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from rmdirac import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_table(capsys):
    code, out, _ = run(capsys, "spectrum", "--kappa=-3..-1", "--n", "0..2")
    assert code == 0
    table = rows(out)
    assert table and list(table[0]) == cli.SPECTRUM_COLUMNS[:9]
    keys = [(int(r["kappa"]), int(r["n"])) for r in table]
    assert keys == sorted(keys)


def test_spectrum_validated_against_oracle(capsys):
    code, out, _ = run(capsys, "spectrum", "--kappa=-3..-1", "--n", "0..2", "--validate")
    table = rows(out)
    assert table
    gaps = [float(r["oracle_rel_gap"]) if r["oracle_rel_gap"] else np.inf for r in table]
    assert code == 0
    assert max(gaps) < 1e-6


def test_window_without_roots_gives_header_only(capsys):
    code, out, _ = run(capsys, "spectrum", "--emin", "-1", "--emax", "1")
    assert code == 0
    assert out.strip().splitlines() == [",".join(cli.SPECTRUM_COLUMNS[:9])]


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("v1 = 3\nfoo = 1\n")
    code, _, err = run(capsys, "spectrum", "--config", str(cfg))
    assert code == 2
    assert "'foo'" in err


def test_bad_flag_value(capsys):
    code, _, err = run(capsys, "spectrum", "--alpha", "-1")
    assert code == 2 and "alpha" in err


def test_unparseable_arguments_exit_two():
    proc = subprocess.run([sys.executable, "-m", "rmdirac", "spectrum", "--nope"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# reference well\nv1 = 3\nv2 = 1\nformat = json\n")
    code, out, _ = run(capsys, "pekeris", "--config", str(cfg), "--format", "csv")
    assert code == 0 and out.startswith("source,")


def test_wavefunction_samples(capsys):
    code, out, _ = run(capsys, "wavefunction", "--kappa", "-1", "--n", "0")
    assert code == 0
    data = np.array([[float(v) for v in r.values()] for r in rows(out)])
    r, f = data[:, 0], data[:, 1]
    assert r[0] > 0 and np.all(np.diff(r) > 0)
    assert np.trapezoid(f**2, r) == pytest.approx(1.0, abs=1e-4)


def test_wavefunction_first_excited_state_has_one_node(capsys):
    code, out, _ = run(capsys, "wavefunction", "--kappa", "-1", "--n", "1")
    assert code == 0
    f = np.array([float(r["F"]) for r in rows(out)])
    assert np.count_nonzero(np.diff(np.sign(f[f != 0]))) == 1


def test_wavefunction_missing_state(capsys):
    code, _, err = run(capsys, "wavefunction", "--kappa", "-1", "--n", "0", "--emin", "-1", "--emax", "1")
    assert code == 3 and "no bound state" in err


def test_pekeris_report_and_parity(capsys):
    _, out_csv, _ = run(capsys, "pekeris", "--alpha", "1", "--r-e", "1")
    code, out_json, _ = run(capsys, "pekeris", "--alpha", "1", "--r-e", "1", "--format", "json")
    assert code == 0
    table = rows(out_csv)
    records = json.loads(out_json)["records"]
    assert {r["source"] for r in table} == {"published", "matched"}
    for c, j in zip(table, records):
        for key, value in c.items():
            if key == "source":
                assert value == j[key]
            else:
                assert float(value) == j[key]
    matched = next(r for r in table if r["source"] == "matched")
    for key in ("contact_value", "contact_slope", "contact_curvature"):
        assert abs(float(matched[key])) < 1e-10


def test_output_is_deterministic(tmp_path):
    outs = []
    path = tmp_path / "s.json"
    for _ in range(2):
        assert cli.main(["spectrum", "--kappa=-2..-1", "--n", "0,1", "--format", "json", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_json_and_csv_spectrum_agree(capsys):
    _, out_csv, _ = run(capsys, "spectrum", "--kappa", "-2", "--n", "0")
    _, out_json, _ = run(capsys, "spectrum", "--kappa", "-2", "--n", "0", "--format", "json")
    records = json.loads(out_json)["records"]
    table = rows(out_csv)
    assert len(records) == len(table)
    for c, j in zip(table, records):
        assert float(c["energy"]) == j["energy"]


def test_validate_default_configuration_passes(capsys):
    code, _, err = run(capsys, "validate")
    assert "criterion 11" in err
    assert code == 0, err


def test_validate_detects_corrupted_delta(capsys):
    code, _, err = run(capsys, "validate", "--corrupt-delta", "0.01")
    assert code == 1
    assert "[FAIL] criterion 4" in err


def test_corrupted_delta_is_caught_by_the_ode_check(nu_branch_params):
    from rmdirac import spectra, validation
    from rmdirac.model import PhysicalContext, QuantumNumbers

    cfg = validation.ValidationConfig(v1=-3.0, v2=-1.0)
    pairs = []
    for n in (0, 1):
        spec = spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, nu_branch_params, PhysicalContext(5.0),
                                          QuantumNumbers(n, -2))
        for st in spectra.solve_bound_states(spec):
            if abs(st.nu_residual) < 1e-9:
                pairs.append(validation._Pairing(spec, st, st.energy, 0.0, True))
    clean = validation.criterion_4(cfg, pairs).measured["max_scaled_residual"]
    bad = validation.criterion_4(validation.ValidationConfig(corrupt_delta=0.01), pairs)
    assert clean < 1e-6
    assert bad.measured["max_scaled_residual"] > 1e-3 and not bad.passed
