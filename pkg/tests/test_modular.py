import numpy as np
import pytest

import fracflow as ff
from fracflow.errors import ExponentOutOfRange, NotW0
from fracflow.modular import conjugate_exponent_values

from oracles import brute_sp_modular


def test_lebesgue_modular_basic(grid16):
    zero = ff.GridFunction.zeros(grid16)
    assert ff.lebesgue_modular(zero, 3.0) == 0.0
    one = ff.GridFunction.from_interior(grid16, np.ones(grid16.n))
    assert ff.lebesgue_modular(one, lambda x: 2.0 + x**2) == pytest.approx(2.0, abs=1e-14)
    two = ff.GridFunction.from_interior(grid16, 2.0 * np.ones(grid16.n))
    assert ff.lebesgue_modular(two, 3.0) == pytest.approx(16.0, abs=1e-12)


def test_lebesgue_modular_rejects_low_exponent(grid16):
    u = ff.GridFunction.from_interior(grid16, np.ones(grid16.n))
    with pytest.raises(ExponentOutOfRange):
        ff.lebesgue_modular(u, 1.0)


def test_luxemburg_constant_exponent_closed_form(grid16):
    # rho_2(u) = 4 for u = sqrt(2) on (-1, 1), so the norm is 2
    u = ff.GridFunction.from_interior(grid16, np.sqrt(2.0) * np.ones(grid16.n))
    rep = ff.luxemburg_norm(u, 2.0)
    assert rep.modular_value == pytest.approx(4.0, abs=1e-12)
    assert rep.luxemburg_norm == pytest.approx(2.0, abs=1e-9)


def test_luxemburg_unit_modular(grid16, rng):
    u = ff.GridFunction.from_interior(grid16, rng.standard_normal(grid16.n))
    h = lambda x: 2.5 + 0.5 * np.sin(3 * x)
    # scale so the modular is exactly 1, then the norm must be 1 +- tol
    rep0 = ff.luxemburg_norm(u, h)
    u1 = u.scaled(1.0 / rep0.luxemburg_norm)
    rep1 = ff.luxemburg_norm(u1, h)
    assert rep1.modular_value == pytest.approx(1.0, abs=1e-9)
    assert rep1.luxemburg_norm == pytest.approx(1.0, abs=1e-9)


def test_luxemburg_zero(grid16):
    rep = ff.luxemburg_norm(ff.GridFunction.zeros(grid16), 2.0)
    assert rep.luxemburg_norm == 0.0 and rep.modular_value == 0.0
    assert rep.bisection_iterations == 0


def test_gagliardo_modular_spike_vs_bruteforce(field):
    # tiny grid, single unit spike: the whole pair table is hand-enumerable
    dom = ff.Domain(-1.0, 1.0, 1.0)
    grid = ff.build_grid(dom, 4, 2)
    ctx = ff.build_context(grid, field, validate=False)
    assert ff.gagliardo_modular(ff.GridFunction.zeros(grid), ctx) == 0.0
    spike = np.zeros(grid.n)
    spike[1] = 1.0
    u = ff.GridFunction.from_interior(grid, spike)
    expected = brute_sp_modular(grid, field, u.values)
    got = ff.gagliardo_modular(u, ctx)
    assert got == pytest.approx(expected, rel=1e-14)


def test_gagliardo_modular_random_vs_bruteforce(field, rng):
    dom = ff.Domain(-1.0, 1.0, 1.0)
    grid = ff.build_grid(dom, 6, 3)
    ctx = ff.build_context(grid, field, validate=False)
    u = ff.GridFunction.from_interior(grid, rng.standard_normal(grid.n))
    assert ff.gagliardo_modular(u, ctx) == pytest.approx(
        brute_sp_modular(grid, field, u.values), rel=1e-13
    )


def test_gagliardo_modular_homogeneity(ctx16, grid16, rng):
    u = ff.GridFunction.from_interior(grid16, rng.standard_normal(grid16.n))
    assert ff.gagliardo_modular(u.scaled(2.0), ctx16) == pytest.approx(
        4.0 * ff.gagliardo_modular(u, ctx16), rel=1e-13
    )


def test_gagliardo_requires_w0(ctx16, grid16):
    u = ff.GridFunction(grid16, np.ones(grid16.n_total), w0=False)
    with pytest.raises(NotW0):
        ff.gagliardo_modular(u, ctx16)


def test_gagliardo_seminorm_constant_exponent(ctx16, grid16, rng):
    u = ff.GridFunction.from_interior(grid16, rng.standard_normal(grid16.n))
    rep = ff.gagliardo_seminorm(u, ctx16)
    assert rep.luxemburg_norm == pytest.approx(rep.modular_value ** 0.5, abs=1e-9)
    zero = ff.gagliardo_seminorm(ff.GridFunction.zeros(grid16), ctx16)
    assert zero.luxemburg_norm == 0.0
    unit = u.scaled(1.0 / rep.luxemburg_norm)
    rep1 = ff.gagliardo_seminorm(unit, ctx16)
    assert rep1.modular_value == pytest.approx(1.0, abs=1e-9)
    assert rep1.luxemburg_norm == pytest.approx(1.0, abs=1e-9)


def _norm_modular_envelopes(norm, modular, lo, hi, rtol=1e-8):
    """The two-sided envelope linking a Luxemburg-type norm and its modular."""
    a, b = norm**lo, norm**hi
    assert min(a, b) * (1 - rtol) - 1e-12 <= modular <= max(a, b) * (1 + rtol) + 1e-12
    if norm <= 1.0:
        # below unit norm the larger exponent gives the lower bound
        assert modular <= a * (1 + rtol) + 1e-12
        assert modular >= b * (1 - rtol) - 1e-12
    if norm >= 1.0:
        assert modular >= a * (1 - rtol) - 1e-12
        assert modular <= b * (1 + rtol) + 1e-12


@pytest.mark.parametrize("h_spec", [2.0, 3.5, lambda x: 2.0 + x**2])
def test_lebesgue_norm_modular_envelopes(grid16, h_spec, rng):
    hv = ff.modular.exponent_values(h_spec, grid16.interior_centers)
    lo, hi = float(np.min(hv)), float(np.max(hv))
    for _ in range(200):
        scale = 10.0 ** rng.uniform(-2, 2)
        u = ff.GridFunction.from_interior(grid16, scale * rng.standard_normal(grid16.n))
        rep = ff.luxemburg_norm(u, h_spec)
        _norm_modular_envelopes(rep.luxemburg_norm, rep.modular_value, lo, hi)


def test_seminorm_modular_envelopes(ctx16, grid16, rng):
    lo = ctx16.summary.p_minus
    hi = ctx16.summary.p_plus
    for _ in range(200):
        scale = 10.0 ** rng.uniform(-2, 1)
        u = ff.GridFunction.from_interior(grid16, scale * rng.standard_normal(grid16.n))
        rep = ff.gagliardo_seminorm(u, ctx16)
        _norm_modular_envelopes(rep.luxemburg_norm, rep.modular_value, lo, hi)


def test_seminorm_envelopes_variable_exponent(domain, grid16, rng):
    field = ff.make_exponent_field(
        0.3,
        p_kind="affine-radial",
        p_params={"a": 2.0, "b": 0.02},
        q_kind="bump",
        q_params={"a": 3.0, "b": 0.2},
        domain=domain,
    )
    ctx = ff.build_context(grid16, field)
    lo, hi = ctx.summary.p_minus, ctx.summary.p_plus
    for _ in range(100):
        scale = 10.0 ** rng.uniform(-1, 1)
        u = ff.GridFunction.from_interior(grid16, scale * rng.standard_normal(grid16.n))
        rep = ff.gagliardo_seminorm(u, ctx)
        _norm_modular_envelopes(rep.luxemburg_norm, rep.modular_value, lo, hi)


def test_scaled_modular_strictly_decreasing(grid16, rng):
    u = ff.GridFunction.from_interior(grid16, rng.standard_normal(grid16.n))
    h = lambda x: 2.0 + x**2
    lams = np.logspace(-2, 2, 30)
    vals = [
        ff.lebesgue_modular(u.scaled(1.0 / lam), h)
        for lam in lams
    ]
    assert np.all(np.diff(vals) < 0)
    # the bisection bracket sees a sign change of modular - 1
    assert vals[0] > 1.0 > vals[-1]


def test_holder_inequality(grid16, rng):
    h = lambda x: 2.0 + x**2
    hv = ff.modular.exponent_values(h, grid16.interior_centers)
    hc = conjugate_exponent_values(h, grid16.interior_centers)
    const = 1.0 / float(np.min(hv)) + 1.0 / float(np.min(hc))
    printed_violations = 0
    for _ in range(200):
        u = ff.GridFunction.from_interior(grid16, rng.standard_normal(grid16.n))
        v = ff.GridFunction.from_interior(grid16, rng.standard_normal(grid16.n))
        lhs = ff.integrate(ff.GridFunction.from_interior(grid16, np.abs(u.interior * v.interior)))
        nu = ff.luxemburg_norm(u, h).luxemburg_norm
        nv = ff.luxemburg_norm(v, hc).luxemburg_norm
        assert lhs <= const * nu * nv * (1.0 + 1e-9)
        # the difference-of-reciprocals constant is recorded, not asserted
        if lhs > (1.0 / float(np.min(hv)) - 1.0 / float(np.max(hv))) * nu * nv:
            printed_violations += 1
    print("\nsamples above the difference-form constant: %d/200" % printed_violations)
