import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from curvilin import cli, verify
from curvilin.cli import RunConfig
from curvilin.curvsum import SumSpec, curvilinear_sum_grid
from curvilin.means import PowerVector, mean_alpha
from curvilin.sets import Grid, StaircaseSet

SCHEMA_DIR = Path(cli.__file__).parent / "schemas"


def schema(name):
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())


def write_inputs(tmp_path):
    gen = verify.InstanceGen(verify.STAIRCASES, seed=2, dim=1, cells=5,
                             zero_frac=0.0)
    paths = {}
    for tag, idx in (("a", 0), ("b", 1)):
        p = tmp_path / f"{tag}.json"
        p.write_text(json.dumps(gen.draw(idx).to_json()))
        paths[tag] = str(p)
    boxes = verify.InstanceGen(verify.BOX_UNIONS, seed=2, dim=2,
                               pieces=3).draw(0)
    p = tmp_path / "boxes.json"
    p.write_text(json.dumps(boxes.to_json()))
    paths["boxes"] = str(p)
    fgen = verify.InstanceGen(verify.GRID_FUNCTIONS, seed=2, dim=1, cells=5)
    for tag, idx in (("f", 0), ("g", 1)):
        p = tmp_path / f"{tag}.json"
        p.write_text(json.dumps(fgen.draw(idx).to_json()))
        paths[tag] = str(p)
    return paths


# ---------------------------------------------------------------------------
# configuration


def test_runconfig_roundtrip_is_lossless():
    configs = [
        RunConfig(command="verify", suite="default", seed=7, workers=2,
                  format="csv"),
        RunConfig(command="sum", a="a.json", b="b.json", p=2.0, t=0.4,
                  alphas=(1.0, 0.5), lambda_points=33, grid=1),
        RunConfig(command="compress", a="boxes.json", out="res.json"),
    ]
    for cfg in configs:
        assert RunConfig.from_json(cfg.to_json()) == cfg
        assert RunConfig.from_json(
            json.loads(json.dumps(cfg.to_json()))) == cfg


def test_runconfig_validates_against_schema():
    cfg = RunConfig(command="sum", a="a.json", b="b.json",
                    alphas=(1.0, 1.0))
    jsonschema.validate(cfg.to_json(), schema("runconfig"))


def test_runconfig_rejects_unknown_command():
    with pytest.raises(Exception):
        RunConfig(command="explode")
    with pytest.raises(Exception):
        RunConfig(command="sum", format="xml")


def test_flag_parsing_covers_documented_surface():
    cfg = cli.config_from_args([
        "sum", "--a", "x.json", "--b", "y.json", "--p", "1.5", "--t", "0.3",
        "--alphas", "1,0.5", "--lambda-points", "17", "--grid", "1",
        "--seed", "9", "--workers", "3", "--out", "o.json",
        "--format", "json"])
    assert cfg == RunConfig(command="sum", a="x.json", b="y.json", p=1.5,
                            t=0.3, alphas=(1.0, 0.5), lambda_points=17,
                            grid=1, seed=9, workers=3, out="o.json",
                            format="json")


def test_workers_fallback_order(monkeypatch):
    monkeypatch.delenv("CURVILIN_WORKERS", raising=False)
    assert cli._resolve_workers(RunConfig(command="verify", workers=5)) == 5
    monkeypatch.setenv("CURVILIN_WORKERS", "3")
    assert cli._resolve_workers(RunConfig(command="verify")) == 3
    monkeypatch.delenv("CURVILIN_WORKERS")
    assert cli._resolve_workers(RunConfig(command="verify")) >= 1


# ---------------------------------------------------------------------------
# operator commands


def test_sum_matches_library_route(tmp_path):
    paths = write_inputs(tmp_path)
    out = tmp_path / "sum.json"
    code = cli.run(RunConfig(command="sum", a=paths["a"], b=paths["b"],
                             p=1.0, t=0.5, alphas=(1.0, 1.0),
                             out=str(out)))
    assert code == 0
    payload = json.loads(out.read_text())
    jsonschema.validate(payload, schema("result"))
    gen = verify.InstanceGen(verify.STAIRCASES, seed=2, dim=1, cells=5,
                             zero_frac=0.0)
    spec = SumSpec(p=1.0, alphas=PowerVector((1.0, 1.0)), t=0.5,
                   lambda_points=64)
    direct = curvilinear_sum_grid(gen.draw(0), gen.draw(1), spec)
    assert payload["volume"] == pytest.approx(direct.volume, rel=1e-12)


def test_sum_output_is_deterministic(tmp_path):
    paths = write_inputs(tmp_path)
    outs = []
    for tag in ("one", "two"):
        out = tmp_path / f"{tag}.json"
        cfg = RunConfig(command="sum", a=paths["a"], b=paths["b"], p=2.0,
                        t=0.4, alphas=(1.0, 0.5), out=str(out))
        assert cli.run(cfg) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_conv_payload_validates(tmp_path):
    paths = write_inputs(tmp_path)
    out = tmp_path / "conv.json"
    code = cli.run(RunConfig(command="conv", a=paths["f"], b=paths["g"],
                             p=2.0, t=0.4, alphas=(1.0, 0.5),
                             out=str(out)))
    assert code == 0
    payload = json.loads(out.read_text())
    jsonschema.validate(payload, schema("result"))
    assert payload["integral"] > 0


def test_compress_preserves_volume_field(tmp_path):
    paths = write_inputs(tmp_path)
    out = tmp_path / "comp.json"
    code = cli.run(RunConfig(command="compress", a=paths["boxes"],
                             out=str(out)))
    assert code == 0
    payload = json.loads(out.read_text())
    jsonschema.validate(payload, schema("result"))
    assert payload["volume"] == pytest.approx(payload["source_volume"],
                                              abs=1e-12)


def test_surface_square_hits_closed_form(tmp_path):
    sq = StaircaseSet(Grid((0.0,), 1 / 8, (8,)), np.ones(8))
    path = tmp_path / "square.json"
    path.write_text(json.dumps(sq.to_json()))
    out = tmp_path / "surf.json"
    code = cli.run(RunConfig(command="surface", a=str(path), b=str(path),
                             p=2.0, out=str(out)))
    assert code == 0
    payload = json.loads(out.read_text())
    jsonschema.validate(payload, schema("result"))
    assert payload["estimate"] == pytest.approx(1.0, rel=0.02)


def test_csv_format_emits_rows(tmp_path):
    paths = write_inputs(tmp_path)
    out = tmp_path / "sum.csv"
    code = cli.run(RunConfig(command="sum", a=paths["a"], b=paths["b"],
                             alphas=(1.0, 1.0), out=str(out), format="csv"))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x0,height"
    assert len(lines) > 1


# ---------------------------------------------------------------------------
# malformed input


def test_malformed_set_file_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"bogus": 1}')
    paths = write_inputs(tmp_path)
    assert cli.run(RunConfig(command="sum", a=str(bad),
                             b=paths["b"])) == 2


def test_unreadable_path_exits_2(tmp_path):
    assert cli.run(RunConfig(command="compress",
                             a=str(tmp_path / "missing.json"))) == 2


def test_wrong_power_count_exits_2(tmp_path):
    paths = write_inputs(tmp_path)
    assert cli.run(RunConfig(command="sum", a=paths["a"], b=paths["b"],
                             alphas=(1.0, 1.0, 1.0))) == 2


def test_bad_manifest_exits_2(tmp_path):
    man = tmp_path / "man.json"
    man.write_text('{"seed": 0}')
    assert cli.run(RunConfig(command="verify", suite=str(man),
                             workers=1)) == 2


# ---------------------------------------------------------------------------
# verify command


def small_manifest(tmp_path, seed=7):
    man = {
        "suite": "smoke",
        "seed": seed,
        "checks": [
            {"check": "lemma_1d", "count": 4, "seed": seed},
            {"check": "bm_curvilinear", "count": 3, "seed": seed},
        ],
    }
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(man))
    return path, man


def test_verify_writes_validating_artifacts(tmp_path, capsys):
    path, man = small_manifest(tmp_path)
    jsonschema.validate(man, schema("manifest"))
    out_dir = tmp_path / "artifacts"
    cfg = RunConfig(command="verify", suite=str(path), workers=1,
                    out=str(out_dir))
    assert cli.run(cfg) == 0
    caps = capsys.readouterr()
    assert caps.out.splitlines()[0] == "check_id,runs,passes,refines,min_slack"
    report_schema = schema("report")
    lines = (out_dir / "reports.jsonl").read_text().splitlines()
    assert len(lines) == 7
    for line in lines:
        jsonschema.validate(json.loads(line), report_schema)
    written = json.loads((out_dir / "manifest.json").read_text())
    jsonschema.validate(written, schema("manifest"))
    assert (out_dir / "summary.csv").exists()


def test_verify_json_summary_validates(tmp_path, capsys):
    path, _ = small_manifest(tmp_path)
    cfg = RunConfig(command="verify", suite=str(path), workers=1,
                    format="json")
    assert cli.run(cfg) == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, schema("summary"))
    assert payload["failures"] == 0


def test_verify_artifacts_are_deterministic(tmp_path, capsys):
    path, _ = small_manifest(tmp_path)
    blobs = []
    for tag in ("one", "two"):
        out_dir = tmp_path / tag
        cfg = RunConfig(command="verify", suite=str(path), workers=1,
                        out=str(out_dir))
        assert cli.run(cfg) == 0
        capsys.readouterr()
        blobs.append((out_dir / "reports.jsonl").read_bytes()
                     + (out_dir / "summary.csv").read_bytes())
    assert blobs[0] == blobs[1]


def test_verify_fail_verdict_exits_1(tmp_path, capsys, monkeypatch):
    def fat_mean(x, y, t, exponent):
        return 3.0 * mean_alpha(x, y, t, exponent)

    monkeypatch.setattr(verify, "mean_alpha", fat_mean)
    path, _ = small_manifest(tmp_path)
    cfg = RunConfig(command="verify", suite=str(path), workers=1)
    assert cli.run(cfg) == 1
    capsys.readouterr()


def test_lambda_points_override_reaches_reports(tmp_path, capsys):
    path, _ = small_manifest(tmp_path)
    out_dir = tmp_path / "artifacts"
    cfg = RunConfig(command="verify", suite=str(path), workers=1,
                    lambda_points=9, out=str(out_dir))
    assert cli.run(cfg) == 0
    capsys.readouterr()
    rows = [json.loads(line) for line in
            (out_dir / "reports.jsonl").read_text().splitlines()]
    assert all(r["lambda_points"] == 9 for r in rows
               if r["check"] == "lemma_1d")


# ---------------------------------------------------------------------------
# entry point


def test_module_entry_point_runs(tmp_path):
    paths = write_inputs(tmp_path)
    out = tmp_path / "sum.json"
    proc = subprocess.run(
        [sys.executable, "-m", "curvilin.cli", "sum", "--a", paths["a"],
         "--b", paths["b"], "--p", "1", "--alphas", "1,1", "--t", "0.5",
         "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(out.read_text())
    assert payload["kind"] == "sum"


def test_main_rejects_bad_alphas_text():
    assert cli.main(["sum", "--a", "x", "--b", "y",
                     "--alphas", "one,two"]) == 2
