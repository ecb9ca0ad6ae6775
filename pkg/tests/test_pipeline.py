import numpy as np
import pytest

from rehark.kernel import KernelKind
from rehark.pipeline import (
    FittedPipeline,
    HyperParams,
    evaluate_split,
    fit_pipeline,
    transform_features,
)
from rehark.transform import l2_normalize, power_transform, rectify


def test_defaults_are_valid():
    HyperParams().validate()


@pytest.mark.parametrize(
    "field,value",
    [
        ("p", 0.4),
        ("p", 1.1),
        ("gamma", -0.1),
        ("omega", 1.5),
        ("eta", 2.5),
        ("alpha_r", -0.2),
        ("lam", 0.0),
        ("lam", 1e4),
        ("beta1", 0.1),
        ("beta2", 100.0),
        ("pi", 1.2),
        ("sigma_zs", 0.1),
    ],
)
def test_out_of_range_params_rejected(field, value):
    with pytest.raises(ValueError):
        HyperParams(**{field: value}).validate()


def test_from_dict_filters_unknown_keys():
    params = HyperParams.from_dict({"p": 0.8, "unknown_flag": 3, "lam": 2.0})
    assert params.p == 0.8 and params.lam == 2.0
    assert params.gamma == HyperParams().gamma


def test_dict_round_trip():
    params = HyperParams(p=0.7, gamma=0.3, augment_enabled=False)
    assert HyperParams.from_dict(params.to_dict()) == params


def test_with_pinned():
    pinned = HyperParams().with_pinned({"omega": 0.0, "pi": 1.0})
    assert pinned.omega == 0.0 and pinned.pi == 1.0
    assert pinned.eta == HyperParams().eta


def test_transform_features_composition():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((5, 6))
    assert np.array_equal(
        transform_features(x, 0.7), l2_normalize(power_transform(x, 0.7))
    )


def test_fit_pipeline_shapes(small_bundle):
    fitted = fit_pipeline(small_bundle, HyperParams())
    assert isinstance(fitted, FittedPipeline)
    n, d = small_bundle.n_classes, small_bundle.dim
    assert fitted.model.s_aug.features.shape == (2 * n * small_bundle.n_shots, d)
    assert fitted.model.alpha_coef.shape == (2 * n * small_bundle.n_shots, n)
    assert fitted.model.w_prior.shape == (n, d)


def test_fit_pipeline_no_augment_row_count(small_bundle):
    fitted = fit_pipeline(small_bundle, HyperParams(augment_enabled=False))
    n = small_bundle.n_classes * small_bundle.n_shots
    assert fitted.model.s_aug.features.shape[0] == n
    assert set(fitted.model.s_aug.source_mask) == {"visual"}


def test_fit_pipeline_validates_params(small_bundle):
    with pytest.raises(ValueError):
        fit_pipeline(small_bundle, HyperParams(lam=1e5))


def test_no_power_equals_skipping_power_stage(small_bundle):
    params = HyperParams(p=1.0)
    fitted = fit_pipeline(small_bundle, params)

    raw = np.asarray(small_bundle.support_features, dtype=np.float64)
    support_plain = l2_normalize(raw)
    assert np.array_equal(fitted.model.s_aug.features[: raw.shape[0]], support_plain)

    queries = small_bundle.val_features
    q_plain = rectify(
        l2_normalize(np.asarray(queries, dtype=np.float64)),
        fitted.model.s_aug.features,
        params.alpha_r,
    )
    assert np.array_equal(fitted.prepare_queries(queries), q_plain)


def test_no_rectify_queries_equal_plain_normalization(small_bundle):
    fitted = fit_pipeline(small_bundle, HyperParams(alpha_r=0.0))
    q = fitted.prepare_queries(small_bundle.val_features)
    expected = l2_normalize(
        power_transform(np.asarray(small_bundle.val_features, np.float64), 1.0)
    )
    assert np.array_equal(q, expected)


def test_predict_labels_shape_and_range(small_bundle):
    fitted = fit_pipeline(small_bundle, HyperParams())
    labels = fitted.predict_labels(small_bundle.test_features)
    assert labels.shape == (small_bundle.test_features.shape[0],)
    assert labels.min() >= 0 and labels.max() < small_bundle.n_classes


def test_evaluate_split_deterministic(small_bundle):
    params = HyperParams(p=0.8, gamma=0.4, omega=0.3)
    a = evaluate_split(small_bundle, params, "val")
    b = evaluate_split(small_bundle, params, "val")
    assert a == b
    assert 0.0 <= a <= 1.0


def test_evaluate_split_kernel_kinds(small_bundle):
    for kind in KernelKind:
        acc = evaluate_split(small_bundle, HyperParams(), "test", kind)
        assert 0.0 <= acc <= 1.0
