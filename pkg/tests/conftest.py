import pathlib

import pytest

from gl2cq.module.hermform import FormContext
from gl2cq.module.polyrep import XFamily


@pytest.fixture
def test_data_location():
    return str(pathlib.Path(__file__).parent / "test_data") + '/'


@pytest.fixture
def identity_x():
    return XFamily.identity()


@pytest.fixture
def constant_x():
    """The non-trivial constant family a=2, c=3, d=1/2."""
    return XFamily.constant("2", "3", "1/2")


@pytest.fixture(params=["identity", "constant"])
def any_x(request):
    if request.param == "identity":
        return XFamily.identity()
    return XFamily.constant("2", "3", "1/2")


@pytest.fixture
def form_context(any_x):
    return FormContext(any_x)


@pytest.fixture
def report_path(tmp_path):
    return str(tmp_path / "report.json")


@pytest.fixture(scope="session")
def ip():
    from IPython.testing.globalipapp import start_ipython

    return start_ipython()
