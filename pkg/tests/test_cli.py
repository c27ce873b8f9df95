import json
import subprocess
import sys

import pytest

from regorbit import data_path
from regorbit.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_envelope(capsys):
    code, rep = run(["--stable", "remark", "--p", "3"], capsys)
    assert code == 0
    assert rep["schema_version"] == 1 and rep["tool"] == "regorbit"
    assert rep["command"] == "remark" and rep["seed"] == 0 and rep["exit_status"] == 0
    assert "timings" not in rep


@pytest.mark.parametrize("p", [2, 3, 5])
def test_remark(p, capsys):
    code, rep = run(["remark", "--p", str(p)], capsys)
    assert code == 0
    assert rep["results"]["verdict"]
    assert set(int(k) for k in rep["results"]["scan"]["histogram"]) == {1, p}


def test_remark_non_prime(capsys):
    code, rep = run(["remark", "--p", "4"], capsys)
    assert code == 2 and "error" in rep


def test_scenario_fermat_validate(capsys):
    code, rep = run(["scenario", str(data_path("fermat.json")), "--validate"], capsys)
    assert code == 1
    assert rep["results"]["hypotheses"]["d"]["passed"] is False


def test_scenario_e1_run(capsys):
    code, rep = run(["scenario", str(data_path("e1.json")), "--run"], capsys)
    assert code == 0
    assert rep["results"]["theorem"]["summary"] is True
    assert rep["results"]["orders"]["GA"] == 2688


def test_scenario_force_reports_flag(capsys):
    code, rep = run(["scenario", str(data_path("fermat.json")), "--force"], capsys)
    assert code == 1  # hypotheses still fail
    assert rep["results"]["theorem"]["forced"] is True
    assert rep["results"]["theorem"]["summary"] is True


def test_scenario_run_skips_when_hypotheses_fail(capsys):
    code, rep = run(["scenario", str(data_path("fermat.json")), "--run"], capsys)
    assert code == 1 and "skipped" in rep["results"]["theorem"]


def test_malformed_json(tmp_path, capsys):
    path = write(tmp_path, "bad.json", "{not json")
    for cmd in ("scenario", "dade", "chartab"):
        code, rep = run([cmd, path], capsys)
        assert code == 2 and "malformed JSON" in rep["error"]


def test_schema_error(tmp_path, capsys):
    path = write(tmp_path, "s.json", {"p": 4, "r": 3, "P": {"kind": "extraspecial", "n": 1}})
    code, _ = run(["scenario", path], capsys)
    assert code == 2


def test_missing_file(capsys):
    code, _ = run(["scenario", "/nonexistent/x.json"], capsys)
    assert code == 2


def test_dade_worked(capsys):
    code, rep = run(["dade", str(data_path("dade_worked.json"))], capsys)
    assert code == 0
    res = rep["results"]
    assert res["certificate"]["stabilizer"] == [0]
    assert res["oracle"]["agrees"] is True


def test_dade_remark(capsys):
    code, rep = run(["dade", str(data_path("dade_remark.json"))], capsys)
    assert code == 1
    assert rep["results"]["hypotheses"]["rejection"]["hypothesis"] == "B_cyclic"


def test_dade_nonfaithful(capsys):
    code, rep = run(["dade", str(data_path("dade_nonfaithful.json"))], capsys)
    assert code == 1
    rej = rep["results"]["hypotheses"]["rejection"]
    assert rej["hypothesis"] == "faithful" and rej["witness"]["kernel_order"] == 2


def test_chartab_named(tmp_path, capsys):
    code, rep = run(["chartab", write(tmp_path, "c6.json", {"named": "C6"})], capsys)
    assert code == 0 and rep["results"]["degrees"] == [1] * 6
    code, rep = run(["chartab", write(tmp_path, "q8.json", {"named": "Q8"}), "--format", "json"], capsys)
    assert code == 0 and rep["results"]["degrees"] == [1, 1, 1, 1, 2]


def test_chartab_generators(tmp_path, capsys):
    path = write(tmp_path, "s3.json", {"generators": [[1, 0, 2], [1, 2, 0]]})
    code, rep = run(["chartab", path], capsys)
    assert code == 0 and rep["results"]["degrees"] == [1, 1, 2]
    assert sum(c["size"] for c in rep["results"]["classes"]) == 6


def test_chartab_over_cap(tmp_path, capsys):
    code, rep = run(["chartab", write(tmp_path, "s7.json", {"named": "S7"})], capsys)
    assert code == 2


def test_bad_arguments(capsys):
    assert main(["remark"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_stable_reports_are_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert main(["--stable", "--out", str(out), "scenario", str(data_path("e0.json")), "--run"]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "regorbit", "--stable", "remark", "--p", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["verdict"] is True
