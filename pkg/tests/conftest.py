from collections.abc import Callable, Generator
from pathlib import Path
from typing import Any
from unittest.mock import AsyncMock

import pytest
from faker import Faker
from fastapi.testclient import TestClient
from pytest_mock import MockerFixture

from src.app.main import app

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "fixtures"

fake = Faker()
Faker.seed(20240611)


@pytest.fixture(scope="session")
def client(session_mocker: MockerFixture) -> Generator[TestClient, Any, None]:
    from .helpers import mocks

    session_mocker.patch("src.app.core.setup.create_pool", new=AsyncMock(return_value=mocks.FakePool()))
    with TestClient(app) as _client:
        yield _client
    app.dependency_overrides = {}


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def override_dependency(dependency: Callable[..., Any], mocked_response: Any) -> None:
    app.dependency_overrides[dependency] = lambda: mocked_response
