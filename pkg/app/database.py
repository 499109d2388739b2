from sqlalchemy.pool import StaticPool
from sqlmodel import SQLModel, create_engine, Session

# Import the table models so they're registered with SQLModel
from .models import EvalRecord, Log  # noqa: F401
from .config import get_settings

database_url = get_settings().database_url

engine_args = {}
if database_url.startswith("sqlite"):
    engine_args["connect_args"] = {"check_same_thread": False}
    if database_url in ("sqlite://", "sqlite:///:memory:"):
        # one shared connection, or every session sees an empty database
        engine_args["poolclass"] = StaticPool
engine = create_engine(database_url, echo=False, **engine_args)


def create_db_and_tables(bind=None):
    """Create the results and log tables."""
    SQLModel.metadata.create_all(bind or engine)


def get_session():
    """Database session dependency."""
    with Session(engine) as session:
        yield session
