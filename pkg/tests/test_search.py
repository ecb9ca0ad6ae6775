import json

import numpy as np
import pytest
from scipy import stats

from rehark.errors import ConstraintConflict, InvalidBudget
from rehark.kernel import KernelKind
from rehark.search import (
    PARAM_ORDER,
    SearchResult,
    SearchSpace,
    run_search,
    sample_params,
    trial_rng,
    validate_constraints,
)


def deterministic_fields(result):
    return [(t.trial_index, t.params, t.val_accuracy) for t in result.history]


def test_budget_one(small_bundle):
    result = run_search(small_bundle, budget=1, seed=0)
    assert result.budget == 1
    assert result.best == result.history[0]


def test_budget_must_be_positive(small_bundle):
    with pytest.raises(InvalidBudget):
        run_search(small_bundle, budget=0)


def test_identical_seeds_serialize_byte_identically(small_bundle):
    a = run_search(small_bundle, budget=6, seed=9)
    b = run_search(small_bundle, budget=6, seed=9)
    assert a.to_json() == b.to_json()


def test_different_seeds_differ(small_bundle):
    a = run_search(small_bundle, budget=6, seed=0)
    b = run_search(small_bundle, budget=6, seed=1)
    assert a.to_json() != b.to_json()


def test_threads_match_serial(small_bundle):
    serial = run_search(small_bundle, budget=8, seed=4, threads=1)
    parallel = run_search(small_bundle, budget=8, seed=4, threads=4)
    assert serial.to_json() == parallel.to_json()


def test_shorter_budget_is_exact_prefix(small_bundle):
    long = run_search(small_bundle, budget=8, seed=3)
    short = run_search(small_bundle, budget=4, seed=3)
    assert deterministic_fields(long)[:4] == deterministic_fields(short)


def test_history_length_and_indices(small_bundle):
    result = run_search(small_bundle, budget=5, seed=2)
    assert len(result.history) == 5
    assert [t.trial_index for t in result.history] == list(range(5))


def test_best_is_max_earliest(small_bundle):
    result = run_search(small_bundle, budget=40, seed=1)
    accs = [t.val_accuracy for t in result.history]
    top = max(accs)
    assert result.best.val_accuracy == top
    assert result.best.trial_index == accs.index(top)


def test_tie_break_prefers_earliest_trial(small_bundle):
    # seed 1 at budget 40 produces repeated best accuracies
    result = run_search(small_bundle, budget=40, seed=1)
    ties = [
        t.trial_index
        for t in result.history
        if t.val_accuracy == result.best.val_accuracy
    ]
    assert len(ties) > 1
    assert result.best.trial_index == min(ties)


def test_pinned_value_used_everywhere(small_bundle):
    result = run_search(small_bundle, budget=6, seed=0, pinned={"pi": 1.0})
    assert all(t.params.pi == 1.0 for t in result.history)


def test_pinned_fields_draw_nothing():
    space = SearchSpace()
    free = sample_params(trial_rng(5, 0), space)
    pinned = sample_params(trial_rng(5, 0), space, {"augment_enabled": False})
    assert pinned.augment_enabled is False
    for name in PARAM_ORDER:
        if name != "augment_enabled":
            assert getattr(pinned, name) == getattr(free, name)


def test_validate_constraints_rejects_unknown():
    with pytest.raises(ConstraintConflict):
        validate_constraints(SearchSpace(), {"nope": 1.0})


def test_validate_constraints_rejects_out_of_range():
    with pytest.raises(ConstraintConflict):
        validate_constraints(SearchSpace(), {"lam": 1e9})


def test_validate_constraints_rejects_non_bool_flag():
    with pytest.raises(ConstraintConflict):
        validate_constraints(SearchSpace(), {"augment_enabled": 1.0})


def test_samples_respect_ranges():
    space = SearchSpace()
    for i in range(200):
        params = sample_params(trial_rng(7, i), space)
        params.validate()
        for name in PARAM_ORDER:
            if name == "augment_enabled":
                continue
            lo, hi = space.bounds(name)
            assert lo <= getattr(params, name) <= hi


def test_power_exponent_spans_range():
    draws = [sample_params(trial_rng(123, i), SearchSpace()).p for i in range(10_000)]
    assert min(draws) >= 0.5 and max(draws) <= 1.0
    assert min(draws) < 0.52 and max(draws) > 0.98


def test_lam_is_log_uniform():
    draws = np.array(
        [sample_params(trial_rng(123, i), SearchSpace()).lam for i in range(10_000)]
    )
    logs = np.log10(draws)
    counts, _ = np.histogram(logs, bins=6, range=(-3.0, 3.0))
    assert stats.chisquare(counts).pvalue > 0.01


def test_json_round_trip(small_bundle):
    result = run_search(small_bundle, budget=4, seed=6, kind=KernelKind.LAPLACIAN)
    restored = SearchResult.from_json(result.to_json())
    assert restored.seed == result.seed
    assert restored.kind == result.kind
    assert deterministic_fields(restored) == deterministic_fields(result)
    assert restored.to_json() == result.to_json()


def test_timing_excluded_by_default(small_bundle):
    result = run_search(small_bundle, budget=2, seed=0)
    payload = json.loads(result.to_json())
    assert "wall_time_ms" not in payload["history"][0]
    timed = json.loads(result.to_json(include_timing=True))
    assert "wall_time_ms" in timed["history"][0]


def test_save_writes_canonical_json(small_bundle, tmp_path):
    result = run_search(small_bundle, budget=2, seed=0)
    path = tmp_path / "result.json"
    result.save(path)
    assert path.read_text(encoding="utf-8") == result.to_json()


def test_log_fn_called_per_trial(small_bundle):
    lines = []
    run_search(small_bundle, budget=3, seed=0, log_fn=lines.append)
    assert len(lines) == 3
    assert lines[0].startswith("trial 1/3 ")


def test_larger_budget_never_hurts(search_bundle):
    small = run_search(search_bundle, budget=5, seed=0)
    large = run_search(search_bundle, budget=20, seed=0)
    assert large.best.val_accuracy >= small.best.val_accuracy
