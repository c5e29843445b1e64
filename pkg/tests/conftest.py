import pytest

from shapegpt.bench import build_suite


@pytest.fixture(scope="session")
def suite_dir(tmp_path_factory):
    """The synthetic benchmark suite, built once per test session."""
    target = tmp_path_factory.mktemp("suite")
    build_suite(target)
    return target
