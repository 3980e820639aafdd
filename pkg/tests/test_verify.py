import json

import numpy as np
import pytest

from curvilin import PowerVector
from curvilin import verify
from curvilin.curvsum import SumSpec, staircase_sum_volume_exact
from curvilin.means import mean_alpha
from curvilin.reports import FAIL, PASS, REFINE
from curvilin.sets import IntervalUnion, StaircaseSet, normalized_compression


# ---------------------------------------------------------------------------
# instance generation


def test_instance_generator_is_deterministic():
    gen = verify.InstanceGen(verify.STAIRCASES, seed=5, dim=2)
    a = gen.draw(3)
    b = verify.InstanceGen(verify.STAIRCASES, seed=5, dim=2).draw(3)
    assert np.array_equal(a.heights, b.heights)
    assert a.grid == b.grid


def test_instance_generator_varies_with_index():
    gen = verify.InstanceGen(verify.STAIRCASES, seed=5, dim=1)
    assert not np.array_equal(gen.draw(0).heights, gen.draw(1).heights)


def test_instance_kinds_cover_every_check():
    for cid in verify.CHECK_IDS:
        inst = verify.make_instance(cid, seed=1, index=0)
        params = verify.make_params(cid, seed=1, index=0, instance=inst)
        assert params["run_seed"] == 1000
        assert params["level"] == 0


def test_calibration_constant_is_stable():
    # frozen against the dense-lambda interval oracle at seed 0
    c = verify.calibrate_grid_constant()
    assert c == pytest.approx(2.652446547886875, rel=1e-12)
    assert c >= 1.0


# ---------------------------------------------------------------------------
# single checks


@pytest.mark.parametrize("check_id", verify.CHECK_IDS)
def test_checks_pass_on_stock_instances(check_id):
    for index in range(3):
        rep = verify.run_check_refined(check_id, seed=7, index=index)
        assert rep.verdict == PASS, (check_id, index, rep.slack)


def test_report_carries_tolerance_and_calibration():
    rep = verify.run_check("bm_curvilinear", seed=7, index=2)
    assert rep.params["c"] == pytest.approx(verify.calibrate_grid_constant())
    assert rep.params["tol"] >= 0.0
    assert rep.slack == pytest.approx(rep.lhs - rep.rhs, abs=1e-15)


def test_refined_run_tightens_lambda_grid():
    base = verify.run_check("sectional", seed=7, index=0)
    finer = verify.run_check("sectional", seed=7, index=0, level=1)
    assert finer.params["level"] == 1
    assert finer.lambda_points == 2 * (base.lambda_points + 1) - 1


def test_classical_reduction_keeps_verdicts():
    # p = 1 with first power one is the classical scalar route; the same
    # draw must agree with itself across two fresh runs bit for bit
    r1 = verify.run_check("lemma_1d", seed=3, index=4)
    r2 = verify.run_check("lemma_1d", seed=3, index=4)
    assert json.dumps(r1.to_json(), sort_keys=True) == json.dumps(
        r2.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# the negative second exponent is excluded on the mean branch: the
# crossing identity flips to an infimum there and the mean-kernel sum
# genuinely outgrows the scaled volume


def test_mean_branch_draws_keep_second_exponent_positive():
    for seed in range(0, 24, 3):
        for index in range(6):
            for cid in ("sectional", "marginal_bbl", "measure_bm"):
                inst = verify.make_instance(cid, seed, index)
                params = verify.make_params(cid, seed, index, instance=inst)
                if params.get("branch") == "mean" and "beta" in params:
                    assert params["beta"] > 0.0, (cid, seed, index)


def test_negative_exponent_mean_sum_outgrows_scaled_volume():
    # frozen witness: the sectional mean-branch relation fails once the
    # second exponent goes negative, because every coefficient pair with
    # lam near the ends scales the reach by (1-t)**(1/(p*delta)) > 1
    a, b = verify.make_instance("sectional", 11, 0)
    p, t, alpha, beta, k = 1.5, 0.5575998395078624, 0.6876302977037323, -0.14519648711711958, 1
    delta = PowerVector((1.0, alpha)).delta(beta, k)
    assert delta == pytest.approx(-0.22558345931408239, rel=1e-12)
    ca = normalized_compression(a, k)
    cb = normalized_compression(b, k)
    edges = (1e-6, 1e-3, 1e-2, 0.99, 0.999, 1 - 1e-6)
    spec = SumSpec(p=p, alphas=PowerVector((1.0, delta)), t=t,
                   lambda_points=65, extra_lambdas=edges)
    grown = staircase_sum_volume_exact(ca, cb, spec)
    # the scaled volume side converges near 2.2; the sum side keeps
    # growing as the lam set approaches the ends of (0, 1)
    assert grown > 8.0


# ---------------------------------------------------------------------------
# shrinking


def test_shrink_returns_passing_reports_unchanged():
    rep = verify.run_check("bm_curvilinear", seed=7, index=1)
    assert rep.verdict == PASS
    assert verify.shrink(rep) is rep


def test_shrink_reduces_injected_failure_to_two_pieces(monkeypatch):
    # inflating the scalar mean forges a violation of the exact interval
    # identity; the minimal failing instance is one interval per side
    def fat_mean(x, y, t, exponent):
        return 3.0 * mean_alpha(x, y, t, exponent)

    monkeypatch.setattr(verify, "mean_alpha", fat_mean)
    rep = verify.run_check_refined("lemma_1d", seed=7, index=0)
    assert rep.verdict == FAIL
    small = verify.shrink(rep)
    assert small.verdict == FAIL
    assert small.params["shrunk_size"] <= 2


def test_shrink_preserves_failure_on_cell_instances(monkeypatch):
    def fat_mean(x, y, t, exponent):
        return 3.0 * mean_alpha(x, y, t, exponent)

    monkeypatch.setattr(verify, "mean_alpha", fat_mean)
    rep = verify.run_check_refined("bm_curvilinear", seed=7, index=0)
    assert rep.verdict == FAIL
    small = verify.shrink(rep)
    assert small.verdict == FAIL
    assert small.params["shrunk_size"] <= 6


# ---------------------------------------------------------------------------
# suite running


def small_manifest(seed=7):
    return {
        "suite": "smoke",
        "seed": seed,
        "checks": [
            {"check": "lemma_1d", "count": 4, "seed": seed},
            {"check": "bm_curvilinear", "count": 3, "seed": seed},
            {"check": "compression_monotone", "count": 3, "seed": seed},
            {"check": "power_monotonicity", "count": 3, "seed": seed},
        ],
    }


def test_suite_results_are_order_insensitive(tmp_path):
    man = small_manifest()
    serial = verify.run_suite(man, workers=1)
    parallel = verify.run_suite(man, workers=2)
    p1 = tmp_path / "serial.jsonl"
    p2 = tmp_path / "parallel.jsonl"
    verify.write_reports_jsonl(p1, serial.reports)
    verify.write_reports_jsonl(p2, parallel.reports)
    assert p1.read_bytes() == p2.read_bytes()
    s1 = tmp_path / "serial.csv"
    s2 = tmp_path / "parallel.csv"
    verify.write_summary_csv(s1, serial.summary)
    verify.write_summary_csv(s2, parallel.summary)
    assert s1.read_bytes() == s2.read_bytes()


def test_suite_reruns_are_byte_identical(tmp_path):
    man = small_manifest()
    paths = []
    for tag in ("one", "two"):
        res = verify.run_suite(man, workers=1)
        path = tmp_path / f"{tag}.jsonl"
        verify.write_reports_jsonl(path, res.reports)
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_suite_summary_shape(tmp_path):
    res = verify.run_suite(small_manifest(), workers=1)
    assert res.failures == 0
    assert {row["check_id"] for row in res.summary} == {
        "lemma_1d", "bm_curvilinear", "compression_monotone",
        "power_monotonicity"}
    for row in res.summary:
        assert row["passes"] + row["refines"] <= row["runs"]
    path = tmp_path / "summary.csv"
    verify.write_summary_csv(path, res.summary)
    head = path.read_text().splitlines()[0]
    assert head == "check_id,runs,passes,refines,min_slack"


def test_default_suite_covers_every_check():
    man = verify.default_suite(seed=7)
    assert {e["check"] for e in man["checks"]} == set(verify.CHECK_IDS)
    assert man["seed"] == 7
    assert all(e["count"] > 0 for e in man["checks"])


def test_reports_jsonl_lines_are_valid(tmp_path):
    res = verify.run_suite(small_manifest(), workers=1)
    path = tmp_path / "reports.jsonl"
    verify.write_reports_jsonl(path, res.reports)
    lines = path.read_text().splitlines()
    assert len(lines) == len(res.reports)
    for line in lines:
        row = json.loads(line)
        for key in ("check", "lhs", "rhs", "slack", "verdict", "params"):
            assert key in row


def test_unknown_check_is_rejected():
    man = {"suite": "bad", "seed": 0,
           "checks": [{"check": "nope", "count": 1, "seed": 0}]}
    with pytest.raises(Exception):
        verify.run_suite(man)
