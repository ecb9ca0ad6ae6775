import json
import subprocess
import sys

import pytest


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "rehark.cli", *map(str, args)],
        capture_output=True,
        text=True,
    )


def test_validate_ok(bundle_manifest):
    proc = run_cli("validate", "--bundle", bundle_manifest)
    assert proc.returncode == 0
    assert proc.stdout.startswith(f"ok: {bundle_manifest} N=3 K=1 d=8")


def test_validate_corrupt_bundle(bundle_manifest):
    matrix = bundle_manifest.parent / "support_features.rehk"
    data = bytearray(matrix.read_bytes())
    data[:5] = b"XXXXX"
    matrix.write_bytes(bytes(data))
    proc = run_cli("validate", "--bundle", bundle_manifest)
    assert proc.returncode == 1
    assert proc.stderr.startswith("error: ")


def test_module_entry_point(bundle_manifest):
    proc = subprocess.run(
        [sys.executable, "-m", "rehark", "validate", "--bundle", str(bundle_manifest)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("ok: ")


def test_search_out_files_identical(bundle_manifest, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        proc = run_cli(
            "search", "--bundle", bundle_manifest, "--budget", 4, "--seed", 9,
            "--out", out,
        )
        assert proc.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["seed"] == 9 and payload["budget"] == 4


def test_search_logs_to_stderr(bundle_manifest):
    proc = run_cli("search", "--bundle", bundle_manifest, "--budget", 3)
    assert proc.returncode == 0
    trial_lines = [l for l in proc.stderr.splitlines() if l.startswith("trial ")]
    assert len(trial_lines) == 3
    json.loads(proc.stdout)


def test_adapt_default_params(bundle_manifest):
    proc = run_cli("adapt", "--bundle", bundle_manifest)
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert set(payload) == {"params", "kernel", "val_accuracy", "test_accuracy"}
    assert 0.0 <= payload["val_accuracy"] <= 1.0
    assert 0.0 <= payload["test_accuracy"] <= 1.0


def test_adapt_rejects_bad_params(bundle_manifest, tmp_path):
    params = tmp_path / "params.json"
    params.write_text(json.dumps({"gamma": 5.0}))
    proc = run_cli("adapt", "--bundle", bundle_manifest, "--params", params)
    assert proc.returncode == 1
    assert proc.stderr.startswith("error: ")


def test_ablate_csv(bundle_manifest):
    proc = run_cli(
        "ablate", "--bundle", bundle_manifest, "--budget", 2,
        "--variants", "full,no_power", "--format", "csv",
    )
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "method,bundle,average"
    assert len(lines) == 3
    assert lines[1].startswith("full,") and lines[2].startswith("no_power,")


def test_compare_markdown(bundle_manifest):
    proc = run_cli("compare", "--bundle", bundle_manifest, "--budget", 2)
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 5
    assert lines[0].startswith("| method |")
    names = [l.split("|")[1].strip() for l in lines[2:]]
    assert names == ["zero_shot", "nw_cache", "rehark_full"]


def test_report_json_round_trip(bundle_manifest, tmp_path):
    result_path = tmp_path / "search.json"
    run_cli("search", "--bundle", bundle_manifest, "--budget", 2, "--out", result_path)
    proc = run_cli("report", result_path, "--format", "json")
    assert proc.returncode == 0
    assert proc.stdout == result_path.read_text()


def test_report_search_result_as_markdown(bundle_manifest, tmp_path):
    result_path = tmp_path / "search.json"
    run_cli("search", "--bundle", bundle_manifest, "--budget", 2, "--out", result_path)
    proc = run_cli("report", result_path)
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "| method | val | average |"
    assert lines[2].startswith("| best |")


def test_report_reformats_reports(bundle_manifest, tmp_path):
    report_path = tmp_path / "report.json"
    run_cli(
        "ablate", "--bundle", bundle_manifest, "--budget", 2,
        "--variants", "full", "--format", "json", "--out", report_path,
    )
    proc = run_cli("report", report_path, "--format", "csv")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "method,bundle,average"


def test_report_rejects_garbage(tmp_path):
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    proc = run_cli("report", garbage)
    assert proc.returncode == 1
    assert "invalid JSON" in proc.stderr


def test_report_rejects_unrecognized_payload(tmp_path):
    payload = tmp_path / "other.json"
    payload.write_text(json.dumps({"hello": 1}))
    proc = run_cli("report", payload)
    assert proc.returncode == 1
    assert "neither" in proc.stderr


@pytest.mark.parametrize(
    "args",
    [
        ("search",),
        ("search", "--bundle", "x", "--budget", "0"),
        ("search", "--bundle", "x", "--budget", "abc"),
        ("search", "--bundle", "x", "--seed", "-1"),
        ("ablate", "--bundle", "x", "--variants", "full,bogus"),
        ("compare", "--bundle", "x", "--format", "xml"),
    ],
)
def test_usage_errors_exit_2(args):
    proc = run_cli(*args)
    assert proc.returncode == 2


def test_missing_bundle_file_is_data_error():
    proc = run_cli("validate", "--bundle", "/nonexistent/manifest.json")
    assert proc.returncode == 1
    assert proc.stderr.startswith("error: ")


def test_out_to_missing_directory_fails(bundle_manifest, tmp_path):
    proc = run_cli(
        "search", "--bundle", bundle_manifest, "--budget", 1,
        "--out", tmp_path / "no_dir" / "x.json",
    )
    assert proc.returncode == 1
    assert proc.stderr.splitlines()[-1].startswith("error: ")
