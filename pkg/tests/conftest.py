import pytest

from rehark import make_synthetic_bundle, save_bundle

# ordering fixture knobs are frozen; the committed margins at budget 200,
# seed 0 are zero_shot 0.1950, nw_cache 0.4700, rehark_full 0.5225
ORDERING_KNOBS = dict(
    n_classes=8,
    dim=32,
    n_shots=2,
    n_val=25,
    n_test=50,
    support_noise=0.30,
    text_noise=0.75,
    query_noise=0.55,
    query_shift=0.60,
    seed=7,
)


@pytest.fixture(scope="session")
def small_bundle():
    return make_synthetic_bundle(
        n_classes=3, dim=8, n_shots=1, n_val=10, n_test=10, seed=11
    )


@pytest.fixture(scope="session")
def search_bundle():
    return make_synthetic_bundle(
        n_classes=8, dim=32, n_shots=1, n_val=25, n_test=50, seed=5
    )


@pytest.fixture(scope="session")
def ordering_bundle():
    return make_synthetic_bundle(**ORDERING_KNOBS)


@pytest.fixture()
def bundle_manifest(tmp_path, small_bundle):
    return save_bundle(small_bundle, tmp_path / "bundle")
