import numpy as np
import pytest

from rehark.errors import DimensionMismatch, EmptyClass, GammaOutOfRange, OmegaOutOfRange
from rehark.prior import PriorParams, blend_text_priors, refine_prior, visual_prototypes
from rehark.transform import l2_normalize


def unit_rows(rng, n, d):
    return l2_normalize(rng.standard_normal((n, d)))


def test_blend_gamma_zero_is_normalized_clip():
    rng = np.random.default_rng(0)
    wc, wg = unit_rows(rng, 4, 6), unit_rows(rng, 4, 6)
    assert np.array_equal(blend_text_priors(wc, wg, 0.0), l2_normalize(wc))


def test_blend_gamma_one_is_normalized_gpt():
    rng = np.random.default_rng(1)
    wc, wg = unit_rows(rng, 4, 6), unit_rows(rng, 4, 6)
    assert np.array_equal(blend_text_priors(wc, wg, 1.0), l2_normalize(wg))


def test_blend_convexity_fixed_point():
    rng = np.random.default_rng(2)
    w = unit_rows(rng, 5, 8)
    for gamma in (0.0, 0.25, 0.5, 0.75, 1.0):
        assert np.allclose(blend_text_priors(w, w, gamma), w, atol=1e-6)


def test_blend_validation():
    w = np.eye(3)
    with pytest.raises(GammaOutOfRange):
        blend_text_priors(w, w, 1.5)
    with pytest.raises(GammaOutOfRange):
        blend_text_priors(w, w, -0.1)
    with pytest.raises(DimensionMismatch):
        blend_text_priors(w, np.eye(4), 0.5)


def test_prototypes_one_shot_equals_support():
    rng = np.random.default_rng(3)
    support = unit_rows(rng, 3, 5)
    labels = np.array([0, 1, 2])
    assert np.allclose(visual_prototypes(support, labels, 3), support, atol=1e-6)


def test_prototypes_duplicate_samples():
    row = l2_normalize(np.array([[0.3, -0.4, 0.5]]))
    support = np.vstack([row, row])
    protos = visual_prototypes(support, np.array([0, 0]), 1)
    assert np.allclose(protos, row, atol=1e-6)


def test_prototypes_analytic_mean():
    support = np.array([[1.0, 0.0], [0.0, 1.0]])
    protos = visual_prototypes(support, np.array([0, 0]), 1)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    assert np.allclose(protos, [[inv_sqrt2, inv_sqrt2]], atol=1e-12)


def test_prototypes_empty_class():
    with pytest.raises(EmptyClass):
        visual_prototypes(np.eye(2), np.array([0, 0]), 2)


def test_prototypes_label_length_mismatch():
    with pytest.raises(DimensionMismatch):
        visual_prototypes(np.eye(3), np.array([0, 1]), 3)


def test_refine_omega_zero_returns_w_text_exactly():
    rng = np.random.default_rng(4)
    w_text, p_vis = unit_rows(rng, 4, 7), unit_rows(rng, 4, 7)
    out = refine_prior(w_text, p_vis, 0.0)
    assert np.array_equal(out, w_text)
    assert out is not w_text


def test_refine_omega_one_is_normalized_prototypes():
    rng = np.random.default_rng(5)
    w_text, p_vis = unit_rows(rng, 4, 7), unit_rows(rng, 4, 7)
    assert np.allclose(refine_prior(w_text, p_vis, 1.0), p_vis, atol=1e-6)


def test_refine_fixed_point():
    rng = np.random.default_rng(6)
    w = unit_rows(rng, 3, 5)
    for omega in (0.0, 0.3, 0.7, 1.0):
        assert np.allclose(refine_prior(w, w, omega), w, atol=1e-6)


def test_refine_validation():
    w = np.eye(3)
    with pytest.raises(OmegaOutOfRange):
        refine_prior(w, w, -0.2)
    with pytest.raises(OmegaOutOfRange):
        refine_prior(w, w, 1.2)
    with pytest.raises(DimensionMismatch):
        refine_prior(w, np.eye(4), 0.5)


def test_prior_outputs_unit_norm():
    rng = np.random.default_rng(7)
    wc, wg = unit_rows(rng, 6, 9), unit_rows(rng, 6, 9)
    support = unit_rows(rng, 12, 9)
    labels = np.repeat(np.arange(6), 2)
    for out in (
        blend_text_priors(wc, wg, 0.4),
        visual_prototypes(support, labels, 6),
        refine_prior(wc, wg, 0.6),
    ):
        assert np.allclose(np.linalg.norm(out, axis=1), 1.0, atol=1e-6)


def test_blend_per_class_independence():
    rng = np.random.default_rng(8)
    wc, wg = unit_rows(rng, 5, 4), unit_rows(rng, 5, 4)
    perm = rng.permutation(5)
    direct = blend_text_priors(wc[perm], wg[perm], 0.3)
    permuted = blend_text_priors(wc, wg, 0.3)[perm]
    assert np.array_equal(direct, permuted)


def test_prototypes_relabel_permutes_rows():
    rng = np.random.default_rng(9)
    support = unit_rows(rng, 8, 4)
    labels = np.repeat(np.arange(4), 2)
    mapping = rng.permutation(4)
    base = visual_prototypes(support, labels, 4)
    remapped = visual_prototypes(support, mapping[labels], 4)
    for c in range(4):
        assert np.array_equal(remapped[mapping[c]], base[c])


def test_prior_params_validation():
    PriorParams(gamma=0.0, omega=1.0)
    with pytest.raises(GammaOutOfRange):
        PriorParams(gamma=2.0)
    with pytest.raises(OmegaOutOfRange):
        PriorParams(omega=-0.5)
