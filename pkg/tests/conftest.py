import io
import os
import sys
from contextlib import redirect_stdout

import pytest

TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
REPO_DIR = os.path.dirname(TESTS_DIR)
FIXTURES = os.path.join(TESTS_DIR, "fixtures")
DATA_DIR = os.path.join(REPO_DIR, "data")

sys.path.insert(0, TESTS_DIR)  # so tests can "import generators"


def fixture_path(*parts: str) -> str:
    return os.path.join(FIXTURES, *parts)


def data_path(*parts: str) -> str:
    return os.path.join(DATA_DIR, *parts)


def run_cli(*argv: str) -> tuple[int, str]:
    """Run the CLI in-process; returns (exit code, stdout text)."""
    from iegraph.cli import main

    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(list(argv))
    return code, buffer.getvalue()


@pytest.fixture(scope="session")
def lexicon():
    from iegraph.lexicon import load_lexicon

    return load_lexicon(data_path("glossary.json"), data_path("aliases.json"))


@pytest.fixture(scope="session")
def empty_lexicon():
    from iegraph.lexicon import Lexicon

    return Lexicon.empty()


@pytest.fixture(scope="session")
def service_client():
    from fastapi.testclient import TestClient

    from iegraph.service import create_app, load_service_config

    config = load_service_config(data_path("service-config.json"))
    with TestClient(create_app(config)) as client:
        yield client
