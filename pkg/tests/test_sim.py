"""Decoder models, Monte Carlo harness, birthday expectation."""

from __future__ import annotations

import math

import pytest

from epcodes.eii import build_eii
from epcodes.gf import default_field
from epcodes.sim import (
    DecoderModel,
    SimResult,
    birthday_expected,
    correctable,
    correction_probability,
    mean_erasures_to_failure,
)

GF8 = default_field(3)
CODE = build_eii(GF8, 5, (1, 1, 2, 5))


# -- models --------------------------------------------------------------

def test_grid_shape_resolution():
    rows = DecoderModel.rows_only(CODE)
    assert rows.grid_shape() == (4, 5)
    assert rows.grid_shape((4, 5)) == (4, 5)
    with pytest.raises(ValueError):
        rows.grid_shape((5, 4))
    lrc = DecoderModel.ideal_lrc(8, 2, 23)
    assert lrc.grid_shape((8, 8)) == (8, 8)
    with pytest.raises(ValueError):
        lrc.grid_shape()
    with pytest.raises(ValueError):
        lrc.grid_shape((8, 9))
    with pytest.raises(ValueError):
        DecoderModel.ideal_lrc(4, 4, 1)


def test_rows_only_model_tracks_sorted_budget_domination():
    model = DecoderModel.rows_only(CODE)
    # counts sorted ascending must sit under (1, 1, 2, 5) positionally
    assert correctable(model, [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4)])
    assert correctable(model, [(0, 0), (2, 1), (2, 2)])
    assert correctable(model, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert not correctable(model, [(0, 0), (0, 1), (1, 0), (1, 1),
                                   (2, 0), (2, 1)])


def test_cols_only_model_uses_the_transposed_budgets():
    model = DecoderModel.cols_only(CODE)
    # transposed budgets are (1, 1, 1, 2, 4): one full column fits under
    # the heaviest, two full columns outrun the top two
    assert correctable(model, [(r, 4) for r in range(4)])
    assert correctable(model, [(r, 0) for r in range(4)])
    assert not correctable(model, [(r, c) for r in range(4) for c in (0, 1)])


def test_iterative_model_clears_the_cross_pattern():
    pattern = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 2), (3, 0), (3, 3)]
    assert not correctable(DecoderModel.rows_only(CODE), pattern)
    assert not correctable(DecoderModel.cols_only(CODE), pattern)
    assert correctable(DecoderModel.iterative(CODE), pattern)


def test_iterative_never_loses_to_either_direction():
    import random
    rng = random.Random(60)
    models = (DecoderModel.rows_only(CODE), DecoderModel.cols_only(CODE),
              DecoderModel.iterative(CODE))
    for _ in range(300):
        k = rng.randrange(1, 12)
        pattern = {(rng.randrange(4), rng.randrange(5)) for _ in range(k)}
        r, c, it = (correctable(m, pattern) for m in models)
        if r or c:
            assert it


def test_ideal_lrc_counts_whole_overloaded_groups():
    model = DecoderModel.ideal_lrc(5, 1, 4)
    shape = (3, 5)
    # two cells in one group: the group is beyond local repair, both
    # cells bill against the global budget
    assert correctable(model, [(0, 0), (0, 1), (0, 2), (0, 3)], shape)
    assert not correctable(model, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)],
                           shape)
    # spread cells repair locally at no global cost
    assert correctable(model, [(r, c) for r in range(3) for c in [r]], shape)


def test_out_of_range_coordinate_rejected():
    with pytest.raises(ValueError):
        correctable(DecoderModel.rows_only(CODE), [(4, 0)])


# -- Monte Carlo ---------------------------------------------------------

def test_mean_is_deterministic_under_a_seed():
    model = DecoderModel.rows_only(CODE)
    a = mean_erasures_to_failure(model, trials=400, seed=3)
    b = mean_erasures_to_failure(model, trials=400, seed=3)
    c = mean_erasures_to_failure(model, trials=400, seed=4)
    assert isinstance(a, SimResult)
    assert (a.mean, a.std_error) == (b.mean, b.std_error)
    assert a.mean != c.mean
    assert a.seed == 3 and a.trials == 400


def test_mean_histogram_accounts_for_every_trial():
    model = DecoderModel.iterative(CODE)
    res = mean_erasures_to_failure(model, trials=500, seed=7)
    assert sum(res.histogram.values()) == 500
    assert sum(k * v for k, v in res.histogram.items()) / 500 == res.mean
    assert min(res.histogram) >= 1
    assert max(res.histogram) <= 21


def test_shared_seed_orders_the_three_models():
    # same seed means same cell permutations, and the iterative model
    # dominates both directions pattern by pattern
    rows = mean_erasures_to_failure(DecoderModel.rows_only(CODE),
                                    trials=300, seed=9).mean
    cols = mean_erasures_to_failure(DecoderModel.cols_only(CODE),
                                    trials=300, seed=9).mean
    it = mean_erasures_to_failure(DecoderModel.iterative(CODE),
                                  trials=300, seed=9).mean
    assert it >= rows and it >= cols


def test_correction_probability_boundaries_and_monotonicity():
    model = DecoderModel.rows_only(CODE)
    assert correction_probability(model, 0, trials=50, seed=1).mean == 1.0
    assert correction_probability(model, 20, trials=50, seed=1).mean == 0.0
    last = 1.0
    for k in range(1, 10):
        p = correction_probability(model, k, trials=200, seed=2).mean
        assert p <= last  # same seed, nested prefixes
        last = p


def test_lrc_mean_runs_from_shape():
    model = DecoderModel.ideal_lrc(5, 1, 3)
    res = mean_erasures_to_failure(model, shape=(4, 5), trials=300, seed=5)
    assert 4 <= res.mean <= 15


# -- birthday expectation ------------------------------------------------

def test_birthday_expected_small_closed_forms():
    assert birthday_expected(1) == 2.0
    assert birthday_expected(2) == 2.5
    assert abs(birthday_expected(365) - 24.616585894598852) < 1e-12


@pytest.mark.parametrize("m", [2, 5, 10])
def test_birthday_expected_matches_integral_form(m):
    # E = integral of exp(-t) * (1 + t/m)^m dt, evaluated by Simpson
    top = 60.0 + 10.0 * m
    steps = 40000
    hstep = top / steps
    total = 0.0
    for i in range(steps + 1):
        t = i * hstep
        w = 1 if i in (0, steps) else (4 if i % 2 else 2)
        total += w * math.exp(-t) * (1.0 + t / m) ** m
    total *= hstep / 3.0
    assert abs(total - birthday_expected(m)) < 1e-9


def test_birthday_matches_a_direct_simulation():
    import random
    m = 10
    rng = random.Random(42)
    trials = 4000
    acc = 0
    for _ in range(trials):
        seen = set()
        draws = 0
        while True:
            draws += 1
            v = rng.randrange(m)
            if v in seen:
                break
            seen.add(v)
        acc += draws
    mc = acc / trials
    assert abs(mc - birthday_expected(m)) < 0.15
