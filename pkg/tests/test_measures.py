import math

import numpy as np
import pytest

from curvilin import (
    CoverageError,
    DomainError,
    GridFunction,
    PowerVector,
    RangeError,
)
from curvilin.curvsum import SumSpec
from curvilin.measures import (
    EPS_SCHEDULE,
    DensityMeasure,
    FSpec,
    SurfaceEstimate,
    f_concavity_check,
    gaussian_density,
    indicator_density,
    lebesgue,
    measure_of,
    minkowski_first_check,
    mixed_volume_check,
    mixed_volume_quantities,
    mu_section_quantities,
    surface_area_funcs,
    surface_area_sets,
    tent_density,
)
from curvilin.sets import (
    Grid,
    GridPointSet,
    StaircaseSet,
    section_profile,
    superlevel,
)


def vec(*alphas):
    return PowerVector(tuple(float(a) for a in alphas))


def cube(side=1.0, cells=8):
    h = side / cells
    return StaircaseSet(Grid((0.0,), h, (cells,)), np.full(cells, side))


def rng_staircase(seed, cells=16, spacing=1 / 16, hi=1.5):
    r = np.random.default_rng(seed)
    heights = r.uniform(0.1, hi, size=cells)
    return StaircaseSet(Grid((0.0,), spacing, (cells,)), heights)


def line_density(extent=2.5, cells=40, slope=0.125):
    h = extent / cells
    grid = Grid((0.0,), h, (cells,))
    mids = grid.cell_lower_corners()[:, 0] + h / 2
    return DensityMeasure(GridFunction(grid, 1.0 + slope * mids), None)


# ---------------------------------------------------------------------------
# densities


def test_density_constructors_pass_spot_check():
    g1 = Grid((0.0,), 0.125, (32,))
    g2 = Grid((0.0, 0.0), 0.25, (16, 16))
    assert lebesgue(g1).is_lebesgue
    assert indicator_density(g2, (2, 2), (9, 11)).alpha_concavity == math.inf
    assert tent_density(g1, (2.0,), 2.0).alpha_concavity == 1.0
    assert gaussian_density(g2, (2.0, 2.0), 1.0).alpha_concavity == 0.0


def test_density_spot_check_rejects_dip():
    grid = Grid((0.0,), 0.125, (17,))
    vals = np.ones(17)
    vals[6:11] = 0.01
    with pytest.raises(DomainError):
        DensityMeasure(GridFunction(grid, vals), 1.0)
    # untagged construction accepts anything nonnegative
    DensityMeasure(GridFunction(grid, vals), None)


def test_density_json_roundtrip():
    mu = tent_density(Grid((0.0,), 0.25, (8,)), (1.0,), 1.5)
    back = DensityMeasure.from_json(mu.to_json())
    assert back.alpha_concavity == 1.0
    assert np.array_equal(back.density.values, mu.density.values)


# ---------------------------------------------------------------------------
# F maps


def test_fspec_families():
    pw = FSpec("power", 1.5)
    assert pw.inverse(pw.value(2.0)) == pytest.approx(2.0, rel=1e-12)
    assert pw.derivative_at_one == 1.5
    lg = FSpec("log")
    assert lg.inverse(lg.value(3.0)) == pytest.approx(3.0, rel=1e-12)
    assert lg.derivative_at_one == 1.0
    ln = FSpec("linear", 2.0, 1.0)
    assert ln.value(2.0) == 5.0
    assert ln.inverse(5.0) == 2.0
    assert ln.derivative_at_one == 2.0


def test_fspec_guards():
    with pytest.raises(RangeError):
        FSpec("exp")
    with pytest.raises(RangeError):
        FSpec("power", 0.0)
    with pytest.raises(RangeError):
        FSpec("power", 2.0).inverse(-1.0)
    with pytest.raises(RangeError):
        FSpec("power", 2.0).value(-1.0)
    with pytest.raises(RangeError):
        FSpec("log").value(0.0)


# ---------------------------------------------------------------------------
# integration


def test_measure_of_constant_density_is_volume():
    a = rng_staircase(1)
    mu = lebesgue(Grid((0.0,), 1 / 16, (24,)))
    assert measure_of(a, mu) == pytest.approx(a.volume, rel=1e-12)
    pts = GridPointSet(np.array([[0.0], [0.25], [0.75]]), 0.25)
    mu1 = lebesgue(Grid((0.0,), 0.25, (8,)))
    assert measure_of(pts, mu1) == pytest.approx(pts.volume, rel=1e-12)


def test_measure_of_linear_density_midpoint_exact():
    cells = 64
    h = 1.0 / cells
    grid = Grid((0.0,), h, (cells,))
    mids = grid.cell_lower_corners()[:, 0] + h / 2
    mu = DensityMeasure(GridFunction(grid, mids), None)
    a = StaircaseSet(grid, np.ones(cells))
    # midpoint rule integrates linear densities exactly
    assert measure_of(a, mu) == pytest.approx(0.5, rel=1e-12)


def test_measure_of_ambient_density_overlap_exact():
    base = Grid((0.0,), 0.25, (4,))
    heights = np.array([0.31, 0.77, 0.113, 0.5])
    a = StaircaseSet(base, heights)
    amb = Grid((0.0, 0.0), 0.25, (4, 4))
    mu = lebesgue(amb)
    assert measure_of(a, mu) == pytest.approx(a.volume, rel=1e-12)


def test_measure_of_coverage_errors():
    a = rng_staircase(2, cells=16, spacing=0.25)
    small = lebesgue(Grid((0.0,), 0.25, (8,)))
    with pytest.raises(CoverageError):
        measure_of(a, small)
    amb = lebesgue(Grid((0.0, 0.0), 0.25, (16, 4)))
    tall = StaircaseSet(Grid((0.0,), 0.25, (16,)), np.full(16, 2.0))
    with pytest.raises(CoverageError):
        measure_of(tall, amb)


def test_measure_of_empty_is_zero():
    empty = StaircaseSet(Grid((0.0,), 0.25, (4,)), np.zeros(4))
    mu = lebesgue(Grid((0.0,), 0.25, (4,)))
    assert measure_of(empty, mu) == 0.0
    no_pts = GridPointSet(np.zeros((0, 1)), 0.25)
    assert measure_of(no_pts, mu) == 0.0


# ---------------------------------------------------------------------------
# sections and layer cake


def test_mu_sections_reduce_to_section_profile():
    r = np.random.default_rng(9)
    heights = r.uniform(0.0, 1.0, size=(6, 5))
    a = StaircaseSet(Grid((0.0, 0.0), 0.25, (6, 5)), heights)
    mu = lebesgue(Grid((0.0, 0.0), 0.25, (6, 5)))
    profile, m, thresh = mu_section_quantities(a, mu, 1)
    plain = section_profile(a, 1)
    assert np.array_equal(profile.values, plain.values)
    assert m == plain.sup_norm
    got = thresh(0.5)
    want = superlevel(plain, 0.5)
    assert np.array_equal(got.coords, want.coords)


def test_mu_sections_layer_cake():
    r = np.random.default_rng(19)
    heights = r.uniform(0.0, 1.2, size=(8, 8))
    a = StaircaseSet(Grid((0.0, 0.0), 0.25, (8, 8)), heights)
    mu = gaussian_density(Grid((0.0, 0.0), 0.25, (8, 8)), (1.0, 1.0), 1.2)
    profile, m, thresh = mu_section_quantities(a, mu, 1)
    total = measure_of(a, mu)
    R = 256
    quad = sum(thresh(j / R).volume for j in range(1, R + 1)) / R
    # right-endpoint quadrature of a nonincreasing level function
    # under-estimates, and by at most the full support per step
    support = thresh(0.0).volume
    assert total - m * quad >= -1e-9
    assert total - m * quad <= m * support / R + 1e-9


def test_mu_sections_degenerate():
    a = StaircaseSet(Grid((0.0,), 0.25, (4,)), np.zeros(4))
    mu = lebesgue(Grid((0.0,), 0.25, (4,)))
    with pytest.raises(Exception):
        mu_section_quantities(a, mu, 0)


# ---------------------------------------------------------------------------
# surface quotients


def test_surface_estimate_build():
    qs = [(0.1, 3.0), (0.05, 2.5), (0.025, 2.4)]
    est = SurfaceEstimate.build(qs)
    assert est.estimate == 2.4
    assert est.trend == "monotone"
    assert not est.unsettled
    wob = SurfaceEstimate.build([(0.1, 1.0), (0.05, 3.0), (0.025, 1.0)])
    assert wob.trend == "oscillating"
    assert wob.unsettled
    with pytest.raises(RangeError):
        SurfaceEstimate(((0.1, 1.0), (0.2, 1.0)), 1.0, "monotone")


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
def test_surface_unit_square_two_over_p(p):
    a = cube()
    mu = lebesgue(Grid((0.0,), 0.125, (8,)))
    est = surface_area_sets(a, a, mu, p, vec(1, 1))
    assert est.estimate == pytest.approx(2.0 / p, rel=0.02)


def test_surface_zero_summand():
    a = cube()
    b = StaircaseSet(a.grid, np.zeros(8))
    mu = lebesgue(a.grid)
    est = surface_area_sets(a, b, mu, 2.0, vec(1, 1))
    assert est.estimate == 0.0
    assert all(q == 0.0 for _, q in est.quotients)


def test_surface_funcs_bridge_and_zero():
    f = GridFunction(Grid((0.0,), 0.125, (8,)), np.full(8, 1.0))
    mu = line_density()
    spec_args = (2.0, vec(1, 1))
    via_funcs = surface_area_funcs(f, f, mu, *spec_args)
    via_sets = surface_area_sets(f.hypograph(), f.hypograph(), mu, *spec_args)
    assert via_funcs.quotients == via_sets.quotients
    assert via_funcs.estimate == via_sets.estimate
    zero = GridFunction(f.grid, np.zeros(8))
    assert surface_area_funcs(f, zero, mu, *spec_args).estimate == 0.0


def test_surface_quotient_nonnegative_random():
    a = rng_staircase(4)
    mu = lebesgue(Grid((0.0,), 1 / 16, (16,)))
    est = surface_area_sets(a, a, mu, 2.0, vec(1, 1))
    assert est.estimate >= 0.0


# ---------------------------------------------------------------------------
# concavity and first variation


def test_f_concavity_sets_power_branch():
    a = rng_staircase(31)
    b = rng_staircase(32)
    spec = SumSpec(p=1.5, alphas=vec(1, 1), t=0.5, lambda_points=24)
    mu = line_density(slope=0.0)  # constant 1 on [0, 2.5]
    gamma = 0.5
    F = FSpec("power", 1.5 * gamma)
    rep = f_concavity_check(a, b, mu, F, spec, tol=0.15)
    assert rep.verdict == "pass"
    assert rep.slack == rep.lhs - rep.rhs
    assert rep.params["F"]["kind"] == "power"


def test_f_concavity_same_set_small_slack():
    a = cube()
    spec = SumSpec(p=2.0, alphas=vec(1, 1), t=0.5, lambda_points=32)
    mu = line_density(slope=0.0)
    F = FSpec("power", 1.0)
    rep = f_concavity_check(a, a, mu, F, spec, tol=0.1)
    assert rep.verdict == "pass"
    assert abs(rep.slack) <= 0.1


def test_f_concavity_zero_measure_passes():
    a = cube()
    zero = StaircaseSet(a.grid, np.zeros(8))
    spec = SumSpec(p=2.0, alphas=vec(1, 1), t=0.5)
    mu = lebesgue(a.grid)
    rep = f_concavity_check(a, zero, mu, FSpec("power", 1.0), spec)
    assert rep.verdict == "pass"
    assert rep.params.get("zero_measure") is True


def test_f_concavity_funcs_dispatch():
    r = np.random.default_rng(77)
    f = GridFunction(Grid((0.0,), 0.125, (8,)), r.uniform(0.2, 1.0, 8))
    g = GridFunction(Grid((0.0,), 0.125, (8,)), r.uniform(0.2, 1.0, 8))
    spec = SumSpec(p=1.5, alphas=vec(1, 1), t=0.5, lambda_points=24)
    mu = line_density(slope=0.0)
    F = FSpec("power", 0.75)
    rep = f_concavity_check(f, g, mu, F, spec, tol=0.15)
    assert rep.check_id == "f_concavity_funcs"
    assert rep.verdict == "pass"


def test_minkowski_first_equality_on_cubes():
    a = cube(1.0)
    b = cube(1.25, cells=10)
    mu = lebesgue(Grid((0.0,), 0.125, (32,)))
    # p = 2 makes the per-axis sup linear in eps: quotients are exact
    F = FSpec("power", 2.0 * 0.5)
    rep = minkowski_first_check(
        a, b, mu, F, 2.0, vec(1, 1), tol=1e-9, gate_tol=0.1
    )
    assert rep.verdict == "pass"
    assert rep.params["gate"] == "pass"
    assert abs(rep.slack) <= 1e-9
    # p = 1 quotients carry curvature error of order the last eps
    F1 = FSpec("power", 1.0 * 0.5)
    rep1 = minkowski_first_check(
        a, b, mu, F1, 1.0, vec(1, 1), tol=0.02, gate_tol=0.1
    )
    assert rep1.verdict == "pass"


def test_minkowski_first_isoperimetric_same_set():
    a = cube()
    mu = lebesgue(a.grid)
    F = FSpec("power", 1.0)
    rep = minkowski_first_check(a, a, mu, F, 2.0, vec(1, 1), tol=1e-9, gate_tol=0.1)
    assert rep.verdict == "pass"
    assert abs(rep.slack) <= 1e-9


def test_mixed_volume_cube_closed_forms():
    a = cube()
    mu = lebesgue(a.grid)
    # F = x: V = S(A,A) = 2/p = 1 at p = 2 and the dilation derivative is 1
    v, m = mixed_volume_quantities(a, a, mu, FSpec("power", 1.0), 2.0, vec(1, 1))
    assert v == pytest.approx(1.0, abs=1e-9)
    assert m == pytest.approx(0.0, abs=1e-9)
    # F = x^2 reweights both slots
    v2, m2 = mixed_volume_quantities(a, a, mu, FSpec("power", 2.0), 2.0, vec(1, 1))
    assert v2 == pytest.approx(2.0, abs=1e-9)
    assert m2 == pytest.approx(-0.5, abs=1e-9)


def test_mixed_volume_variation_equality_cases():
    a = cube()
    mu = lebesgue(a.grid)
    for F in (FSpec("power", 1.0), FSpec("power", 2.0)):
        rep = mixed_volume_check(a, a, mu, F, 2.0, vec(1, 1), tol=1e-9)
        assert rep.verdict == "pass"
        assert abs(rep.slack) <= 1e-9
    b = cube(2.0, cells=16)
    mub = lebesgue(Grid((0.0,), 0.125, (16,)))
    rep = mixed_volume_check(a, b, mub, FSpec("power", 1.0), 2.0, vec(1, 1), tol=1e-9)
    assert rep.verdict == "pass"
    assert abs(rep.slack) <= 1e-9


def test_dilation_map_concavity_samples():
    # F(mu(A + eps x A)) for a cube with F = x^(p/2) is exactly 1 + eps
    from curvilin.curvsum import scalar_dilate, staircase_sum_volume_exact

    a = cube()
    F = FSpec("power", 1.0)
    spec = SumSpec(p=2.0, alphas=vec(1, 1), t=None, coefficient_form="t_free")
    vals = {}
    for eps in (0.1, 0.2, 0.3):
        s = staircase_sum_volume_exact(a, scalar_dilate(eps, a, spec), spec)
        vals[eps] = F.value(s)
    assert vals[0.2] >= 0.5 * (vals[0.1] + vals[0.3]) - 1e-12
    assert vals[0.2] == pytest.approx(1.2, rel=1e-12)
    lg = FSpec("log")
    logs = {e: lg.value(1.0 + e) for e in vals}
    assert logs[0.2] >= 0.5 * (logs[0.1] + logs[0.3]) - 1e-12


def test_report_json_shape():
    a = cube()
    mu = lebesgue(a.grid)
    spec = SumSpec(p=2.0, alphas=vec(1, 1), t=0.5)
    rep = f_concavity_check(a, a, mu, FSpec("power", 1.0), spec, tol=0.1)
    payload = rep.to_json()
    assert set(payload) == {
        "check", "seed", "params", "lhs", "rhs", "slack",
        "grid", "lambda_points", "verdict",
    }
    assert payload["slack"] == payload["lhs"] - payload["rhs"]
    assert len(EPS_SCHEDULE) == 7
