import pytest

from taylormeans import _kernels

BACKENDS = ["numba", "numpy"] if _kernels.HAVE_NUMBA else ["numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    prev = _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(prev)
