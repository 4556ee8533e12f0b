import pathlib

import pytest


def pytest_addoption(parser):
    parser.addoption("--cli", required=True)
    parser.addoption("--corpus-dir", required=True)


@pytest.fixture(scope="session")
def cli(request):
    return request.config.getoption("--cli")


@pytest.fixture(scope="session")
def corpus_dir(request):
    return pathlib.Path(request.config.getoption("--corpus-dir"))
