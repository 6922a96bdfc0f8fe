import pytest

from app import create_app
from config import Settings

P = 32003
SMALL_P = 101


@pytest.fixture
def settings(tmp_path) -> Settings:
    return Settings(prime=P, seed=0, trials=40)


@pytest.fixture
def app(settings):
    app = create_app(settings)
    app.config.update(TESTING=True)
    return app


@pytest.fixture
def client(app):
    return app.test_client()
