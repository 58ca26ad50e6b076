"""
Fixtures pytest partagées : catalogues, polynômes de référence, adaptateur, service et contrôleur.
"""
import os

import pytest

from src.controllers.cli_controller import CliController
from src.db.adapters.memory_adapter import MemoryAdapter
from src.services.certifier_service import CertifierService
from src.services.rootdata import catalog

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "src", "fixtures")


def read_fixture(name: str) -> str:
    with open(os.path.join(FIXTURES_DIR, f"{name}.poly"), encoding="utf-8") as handle:
        return handle.read()


@pytest.fixture(scope="session")
def fixture_texts():
    return {name: read_fixture(name) for name in ("e7-p5", "e7-p6")}


@pytest.fixture
def e6():
    return catalog("E6")


@pytest.fixture
def e7():
    return catalog("E7")


@pytest.fixture
def memory_adapter(fixture_texts):
    return MemoryAdapter(dict(fixture_texts))


@pytest.fixture
def certifier_service(memory_adapter):
    return CertifierService(memory_adapter)


@pytest.fixture
def cli_controller(certifier_service):
    return CliController(certifier_service)
