"""Shared fixtures: synthetic CBF-style splits, temporary UCR files, an in-memory store."""
import json
import os
from pathlib import Path

# keep the API tests off the on-disk results database
os.environ.setdefault("TSAUG_DATABASE_URL", "sqlite://")

import numpy as np
import pytest
from fastapi.testclient import TestClient
from sqlalchemy.pool import StaticPool
from sqlmodel import Session, SQLModel, create_engine

from app.models import Dataset, LabeledSeries, SplitEnum, as_series
from app.services.series_service import write_ucr_tsv

ORACLE_FILE = Path(__file__).parent / "oracles.json"


def cbf_series(kind: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Cylinder (1), bell (2) or funnel (3) shape with N(0, 1) noise."""
    t = np.arange(n)
    a = rng.integers(n // 8, n // 4 + 1)
    b = a + rng.integers(n // 4, 3 * n // 4 + 1)
    b = min(b, n - 1)
    eta = rng.normal(6.0, 1.0)
    window = ((t >= a) & (t <= b)).astype(float)
    if kind == 1:
        shape = eta * window
    elif kind == 2:
        shape = eta * window * (t - a) / (b - a)
    else:
        shape = eta * window * (b - t) / (b - a)
    return shape + rng.normal(0.0, 1.0, size=n)


def make_cbf(per_class: int = 10, n: int = 128, seed: int = 7,
             split: SplitEnum = SplitEnum.TRAIN, name: str = "CBF") -> Dataset:
    rng = np.random.default_rng(seed)
    items = [
        LabeledSeries(series=as_series(cbf_series(kind, n, rng)), label=str(kind))
        for _ in range(per_class) for kind in (1, 2, 3)
    ]
    return Dataset.from_items(name, split, items)


@pytest.fixture
def cbf_train() -> Dataset:
    return make_cbf(per_class=10, seed=7)


@pytest.fixture
def cbf_test() -> Dataset:
    return make_cbf(per_class=20, seed=11, split=SplitEnum.TEST)


@pytest.fixture
def cbf_files(tmp_path, cbf_train, cbf_test):
    """(train path, test path) of the synthetic CBF split on disk."""
    train_path = tmp_path / "CBF_TRAIN.tsv"
    test_path = tmp_path / "CBF_TEST.tsv"
    write_ucr_tsv(cbf_train, train_path)
    write_ucr_tsv(cbf_test, test_path)
    return train_path, test_path


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240229)


@pytest.fixture
def ucr_root() -> Path:
    root = os.getenv("TSAUG_UCR_ROOT")
    if not root:
        pytest.skip("TSAUG_UCR_ROOT is not set")
    return Path(root)


@pytest.fixture
def oracle():
    """Frozen expected values from ``tests/oracles.json``; a missing key fails the test."""
    store = json.loads(ORACLE_FILE.read_text())

    def lookup(key: str):
        if key not in store:
            pytest.fail(f"no frozen value for '{key}' in {ORACLE_FILE.name}")
        return store[key]
    return lookup


@pytest.fixture(name="session")
def session_fixture():
    engine = create_engine(
        "sqlite://", connect_args={"check_same_thread": False}, poolclass=StaticPool
    )
    SQLModel.metadata.create_all(engine)
    with Session(engine) as session:
        yield session


@pytest.fixture(name="client")
def client_fixture(session: Session):
    from app.database import get_session
    from app.main import app

    def get_session_override():
        return session

    app.dependency_overrides[get_session] = get_session_override
    with TestClient(app) as client:
        yield client
    app.dependency_overrides.clear()
