import importlib

import pytest

from cayleyperturb import _pykernels

_ACCEPTANCE = []


def _kernel_modules():
    mods = [pytest.param(_pykernels, id="python")]
    try:
        compiled = importlib.import_module("cayleyperturb._kernels")
        mods.append(pytest.param(compiled, id="compiled"))
    except ImportError:
        mods.append(pytest.param(None, id="compiled", marks=pytest.mark.skip("extension not built")))
    return mods


@pytest.fixture(params=_kernel_modules())
def kern(request):
    return request.param


@pytest.fixture
def acceptance_log():
    def record(label, passed, detail=""):
        _ACCEPTANCE.append((label, passed, detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
