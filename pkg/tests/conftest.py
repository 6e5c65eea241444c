from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from textgraph.config import load_config, load_resources
from textgraph.pipeline import build_document_file

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


def sample_data_dir() -> Path:
    from importlib import resources

    return Path(str(resources.files("textgraph").joinpath("data", "sample")))


@pytest.fixture(scope="session")
def sample_dir() -> Path:
    return sample_data_dir()


@pytest.fixture(scope="session")
def sample_config(sample_dir):
    return load_config(sample_dir / "config.json")


@pytest.fixture(scope="session")
def sample_resources(sample_config):
    return load_resources(sample_config)


@pytest.fixture(scope="session")
def graph_a(sample_resources, sample_dir):
    return build_document_file(sample_dir / "karuna_a.txt", sample_resources)


@pytest.fixture(scope="session")
def graph_b(sample_resources, sample_dir):
    return build_document_file(sample_dir / "karuna_b.txt", sample_resources)
