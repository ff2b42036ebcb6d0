import pytest

from boundfilter.kernels import warm_up


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the JIT kernels once so timed tests measure work, not numba
    warm_up()


@pytest.fixture(params=["jit", "numpy"])
def kernel_path(request, monkeypatch):
    """Run the decorated test on both kernel backends."""
    if request.param == "numpy":
        monkeypatch.setenv("BF_DISABLE_NUMBA", "1")
    else:
        monkeypatch.delenv("BF_DISABLE_NUMBA", raising=False)
    return request.param
