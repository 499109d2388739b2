"""Base models and mixins for the results store."""
from datetime import datetime, timezone

from sqlmodel import Field, SQLModel


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


class TimestampMixin(SQLModel):
    """Mixin to add a creation timestamp to stored rows."""
    created_at: datetime = Field(default_factory=utcnow)
