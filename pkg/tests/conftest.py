import pytest

from imsfeat import kernels
from imsfeat.instance import KnapsackInstance


@pytest.fixture(params=kernels.available_backends())
def backend(request, monkeypatch):
    """Run the test once per importable kernel backend."""
    impl = kernels.load_backend(request.param)
    for name in ("ims_weight_counts", "kmeans_step", "zero_one_max"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


def make(profits, weights, capacity):
    return KnapsackInstance.from_items(profits, weights, capacity)


@pytest.fixture
def tiny():
    # n=2, c=4, (p, w) = (3, 3), (2, 2)
    return make([3, 2], [3, 2], 4)
