"""Weighted intervals: measure, boundary content, volume growth, sharpness."""

import math
import random

import numpy as np
import pytest

from mcp_iso import (
    ConstantDensity,
    Density,
    DomainError,
    IntervalUnion,
    MonomialDensity,
    PiecewiseMonomialDensity,
    PreconditionError,
    SharpDensity,
    TabulatedDensity,
    WeightedInterval,
    avr,
    avr_lower_bound,
    bishop_gromov_check,
    check_mcp_density,
    interval_union_from_dict,
    measure,
    minkowski_content,
    minkowski_content_estimator,
    sharp_space,
    space_from_dict,
    unit_ball_volume,
    verify_sharpness,
    volume_ratio,
)

INF = math.inf


def unit_space(d=1.0):
    return WeightedInterval(d, ConstantDensity(1.0))


# -------------------------------------------------------------- interval sets


def test_interval_union_normalization():
    u = IntervalUnion.of([(0.5, 0.7), (0.0, 0.2)])
    assert u.components == ((0.0, 0.2), (0.5, 0.7))
    # touching intervals merge
    assert IntervalUnion.of([(0.0, 1.0), (1.0, 2.0)]).components == ((0.0, 2.0),)
    # overlap merges too
    assert IntervalUnion.of([(0.0, 1.0), (0.5, 2.0)]).components == ((0.0, 2.0),)
    # degenerate survives
    assert IntervalUnion.of([(0.3, 0.3)]).components == ((0.3, 0.3),)
    with pytest.raises(DomainError):
        IntervalUnion.of([(1.0, 0.5)])


def test_interval_union_json():
    u = IntervalUnion.of([(0.1, 0.2), (0.5, 0.9)])
    assert interval_union_from_dict(u.to_dict()) == u


# ------------------------------------------------------------------- measures


def test_measure_lebesgue_segment():
    assert measure(unit_space(), IntervalUnion.of([(0.2, 0.5)])) == pytest.approx(0.3)


def test_measure_sharp_extremal_set_is_designed_mass():
    for a, v, n in ((1.0 / (2 * math.pi), 1.0, 2.0), (0.3, 2.5, 3.0), (0.05, 0.4, 1.5)):
        space, extremal = sharp_space(a, v, n)
        assert measure(space, extremal) == pytest.approx(v, rel=1e-12)


def test_measure_linear_density_ball():
    space = WeightedInterval(INF, MonomialDensity(1.0, 1.0))
    assert measure(space, IntervalUnion.of([(0.0, 3.0)])) == pytest.approx(4.5)


def test_measure_additive_and_monotone():
    space = WeightedInterval(2.0, MonomialDensity(1.0, 1.0))
    parts = [IntervalUnion.of([(0.1, 0.4)]), IntervalUnion.of([(0.8, 1.7)])]
    union = IntervalUnion.of([(0.1, 0.4), (0.8, 1.7)])
    assert measure(space, union) == pytest.approx(
        sum(measure(space, p) for p in parts), rel=1e-14
    )
    smaller = IntervalUnion.of([(0.15, 0.35), (0.9, 1.5)])
    assert measure(space, smaller) <= measure(space, union)


def test_measure_rejects_escaping_set():
    with pytest.raises(DomainError):
        measure(unit_space(), IntervalUnion.of([(0.5, 1.5)]))


# ---------------------------------------------------------- boundary content


def test_content_empty_and_interior_segment():
    space = unit_space()
    assert minkowski_content(space, IntervalUnion.empty()) == 0.0
    assert minkowski_content(space, IntervalUnion.of([(0.2, 0.5)])) == pytest.approx(2.0)
    # anchored at either side of the ambient interval: one endpoint free
    assert minkowski_content(space, IntervalUnion.of([(0.0, 0.5)])) == pytest.approx(1.0)
    assert minkowski_content(space, IntervalUnion.of([(0.5, 1.0)])) == pytest.approx(1.0)


def test_content_degenerate_point():
    space = unit_space()
    assert minkowski_content(space, IntervalUnion.of([(0.4, 0.4)])) == pytest.approx(2.0)
    assert minkowski_content(space, IntervalUnion.of([(0.0, 0.0)])) == pytest.approx(1.0)


def test_content_of_sharp_extremal_set():
    a, v, n = 0.3, 2.0, 2.5
    space, extremal = sharp_space(a, v, n)
    expected = (n * unit_ball_volume(n) * a) ** (1.0 / n) * v ** ((n - 1.0) / n)
    assert minkowski_content(space, extremal) == pytest.approx(expected, rel=1e-13)


def test_estimator_matches_content_simple_cases():
    # At eps = 1e-8 the strip widths themselves carry ~1e-8 relative float
    # rounding, so the quotient is good to ~1e-7 here, not machine precision.
    space = unit_space()
    seg = IntervalUnion.of([(0.2, 0.5)])
    value, quotients = minkowski_content_estimator(space, seg)
    assert value == pytest.approx(2.0, abs=1e-7)
    assert len(quotients) == 6
    point = IntervalUnion.of([(0.35, 0.35)])
    value, _ = minkowski_content_estimator(space, point)
    assert value == pytest.approx(2.0, abs=1e-7)


def test_estimator_matches_content_sharp_extremal():
    space, extremal = sharp_space(0.3, 2.0, 2.5)
    target = minkowski_content(space, extremal)
    value, _ = minkowski_content_estimator(space, extremal)
    assert value == pytest.approx(target, abs=1e-6)


def test_estimator_preconditions():
    space = unit_space()
    close = IntervalUnion.of([(0.2, 0.4), (0.4005, 0.6)])
    with pytest.raises(PreconditionError):
        minkowski_content_estimator(space, close, (1e-3, 1e-4))
    with pytest.raises(PreconditionError):
        minkowski_content_estimator(space, IntervalUnion.of([(0.2, 0.4)]), (1e-4, 1e-3))


def random_corpus(count, seed=20240917):
    """Deterministic corpus of (space, set) pairs with bounded derivative."""
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        kind = rng.choice(["constant", "monomial", "piecewise", "sharp", "tabulated"])
        if kind == "constant":
            h, d = ConstantDensity(rng.uniform(0.2, 2.0)), rng.uniform(2.0, 4.0)
        elif kind == "monomial":
            h, d = MonomialDensity(rng.uniform(0.2, 2.0), rng.uniform(0.0, 3.0)), 3.0
        elif kind == "piecewise":
            b = rng.uniform(0.5, 1.5)
            c0 = rng.uniform(0.2, 2.0)
            p1 = rng.uniform(0.5, 2.0)
            h = PiecewiseMonomialDensity((b,), ((c0, 0.0), (c0 / b ** p1, p1)))
            d = INF
        elif kind == "sharp":
            h = SharpDensity(rng.uniform(0.02, 0.1), rng.uniform(0.2, 2.0), rng.uniform(1.5, 3.0))
            d = INF
        else:
            grid = np.linspace(0.0, 4.0, 33)
            vals = 0.5 + np.abs(np.sin(grid * rng.uniform(0.5, 2.0))) * rng.uniform(0.5, 2.0)
            h, d = TabulatedDensity(tuple(grid), tuple(vals)), 4.0
        space = WeightedInterval(d, h)
        hi = min(d, 3.0)
        k = rng.randint(1, 3)
        cuts = sorted(rng.uniform(0.0, hi) for _ in range(2 * k))
        comps = [(cuts[2 * i], cuts[2 * i + 1]) for i in range(k)]
        # Keep neighbourhoods of distinct components comfortably disjoint.
        if any(b - a < 0.05 for (_, a), (b, _) in zip(comps, comps[1:])):
            continue
        cases.append((space, IntervalUnion.of(comps)))
    return cases


def test_estimator_agrees_on_random_corpus_sample():
    for space, subset in random_corpus(25):
        exact = minkowski_content(space, subset)
        estimate, _ = minkowski_content_estimator(space, subset)
        assert estimate == pytest.approx(exact, abs=1e-6)


# ------------------------------------------------------------- volume growth


def test_avr_of_euclidean_normalization():
    n = 2.0
    c = n * unit_ball_volume(n)
    space = WeightedInterval(INF, MonomialDensity(c, n - 1.0))
    value, certified = avr(space, n)
    assert certified and value == pytest.approx(1.0, rel=1e-13)


def test_avr_of_sharp_space_is_design_parameter():
    for a in (0.05, 1.0 / (2 * math.pi), 2.0):
        space, _ = sharp_space(a, 1.3, 2.0)
        value, certified = avr(space, 2.0)
        assert certified and value == pytest.approx(a, rel=1e-12)


def test_avr_bounded_space_is_zero():
    value, certified = avr(unit_space(), 2.0)
    assert certified and value == 0.0


def test_avr_subcritical_and_supercritical_tails():
    space = WeightedInterval(INF, ConstantDensity(1.0))
    value, certified = avr(space, 2.0)
    assert certified and value == 0.0
    space = WeightedInterval(INF, MonomialDensity(1.0, 2.0))
    value, certified = avr(space, 2.0)
    assert certified and math.isinf(value)


class _BumpPlusLinear(Density):
    """Linear tail plus a compact bump; no single monomial tail is declared."""

    kind = "test_bump"
    support_start = 0.0
    support_end = math.inf

    def __call__(self, x):
        return x + (1.0 if x < 1.0 else 0.0)

    def integral(self, s, t):
        bump = max(0.0, min(t, 1.0) - min(s, 1.0))
        return 0.5 * (t * t - s * s) + bump

    def tail(self):
        return None

    def to_dict(self):
        return {"type": "test_bump"}


def test_avr_uncertified_ratio_upper_bounds_the_limit():
    space = WeightedInterval(INF, _BumpPlusLinear())
    value, certified = avr(space, 2.0, r_max=1e6)
    assert not certified
    true_limit = 1.0 / (2.0 * unit_ball_volume(2.0))
    assert value >= true_limit
    assert value == pytest.approx(true_limit, rel=1e-5)


def test_certified_avr_reproduced_by_ratio_at_large_radius():
    cases = [
        WeightedInterval(INF, MonomialDensity(2.0 * math.pi, 1.0)),
        sharp_space(0.25, 1.0, 2.0)[0],
    ]
    for space in cases:
        value, certified = avr(space, 2.0)
        assert certified
        assert volume_ratio(space, 2.0, 1e6) == pytest.approx(value, rel=1e-6)


def test_bishop_gromov_pass_and_fail():
    radii = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    cone = WeightedInterval(INF, MonomialDensity(1.0, 1.0))
    assert bishop_gromov_check(cone, 2.0, radii).passed
    sharp, _ = sharp_space(0.2, 1.0, 2.0)
    assert bishop_gromov_check(sharp, 2.0, radii).passed
    grid = np.linspace(0.0, 3.2, 400)
    exp_space = WeightedInterval(3.2, TabulatedDensity(tuple(grid), tuple(np.exp(grid))))
    verdict = bishop_gromov_check(exp_space, 2.0, radii)
    assert verdict.status == "fail"
    w = verdict.witness
    assert w.side == "upper" and w.lhs > w.rhs and w.x0 < w.x1


# ------------------------------------------------------------------ sharpness


def test_sharp_space_flat_then_linear_example():
    space, extremal = sharp_space(1.0 / (2.0 * math.pi), 1.0, 2.0)
    h = space.h
    assert h.x_star == pytest.approx(1.0, rel=1e-13)
    assert h(0.3) == pytest.approx(1.0, rel=1e-13)
    assert h(2.0) == pytest.approx(2.0, rel=1e-13)
    assert extremal.components == ((0.0, pytest.approx(1.0, rel=1e-13)),)
    assert check_mcp_density(h, INF, 2.0).status == "pass_exact"


def test_verify_sharpness_gap_vanishes():
    assert abs(verify_sharpness(1.0 / (2.0 * math.pi), 1.0, 2.0)) <= 1e-12
    for a in (0.1, 1.0, 5.0):
        for v in (0.5, 1.0, 10.0):
            for n in (1.5, 2.0, 3.0, 5.0):
                assert abs(verify_sharpness(a, v, n)) <= 1e-10
    # degenerate tiny mass: both sides vanish together
    assert abs(verify_sharpness(0.5, 1e-12, 2.0)) <= 1e-12


def test_bound_holds_for_sampled_sets_on_certified_spaces():
    # Desk-scale check of the main inequality on sampled interval unions.
    rng = random.Random(7)
    spaces = [
        (sharp_space(0.3, 2.0, 2.5)[0], 2.5),
        (WeightedInterval(INF, MonomialDensity(2.0 * math.pi, 1.0)), 2.0),
    ]
    for space, n in spaces:
        assert check_mcp_density(space.h, INF, n).passed
        alpha, certified = avr(space, n)
        assert certified and alpha > 0
        for _ in range(40):
            k = rng.randint(1, 2)
            cuts = sorted(rng.uniform(0.0, 3.0) for _ in range(2 * k))
            subset = IntervalUnion.of(
                [(cuts[2 * i], cuts[2 * i + 1]) for i in range(k)]
            )
            lhs = minkowski_content(space, subset)
            rhs = avr_lower_bound(n, alpha, measure(space, subset))
            assert lhs >= rhs - 1e-9


# ----------------------------------------------------------------- descriptors


def test_space_json_round_trip():
    for space in (unit_space(2.0), sharp_space(0.2, 1.0, 2.0)[0]):
        again = space_from_dict(space.to_dict())
        assert again == space


def test_space_validation():
    with pytest.raises(DomainError):
        WeightedInterval(INF, TabulatedDensity((0.0, 1.0), (1.0, 1.0)))
    with pytest.raises(DomainError):
        WeightedInterval(3.0, TabulatedDensity((0.1, 1.0), (1.0, 1.0)))
    with pytest.raises(DomainError):
        WeightedInterval(3.0, TabulatedDensity((0.0, 1.0), (1.0, 1.0)))
    with pytest.raises(DomainError):
        space_from_dict({"D": 1.0})
