import numpy as np
import pytest

from bicomplex import _kernels

ACCEPTANCE = []


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def backend(request, monkeypatch):
    """Route the public API through one kernel family."""
    jac, orth, kry = _kernels.BACKENDS[request.param]
    monkeypatch.setattr(_kernels, "jacobi_sweeps", jac)
    monkeypatch.setattr(_kernels, "orthonormalize_columns", orth)
    monkeypatch.setattr(_kernels, "krylov_basis", kry)
    return request.param


@pytest.fixture
def criterion():
    """Record one acceptance verdict, then assert it."""

    def check(number, title, passed, detail=""):
        ACCEPTANCE.append((number, title, bool(passed), detail))
        assert passed, f"criterion {number} ({title}) failed: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {number:>2}. {title}  {detail}")
