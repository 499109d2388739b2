"""Persistent log records; bench runs tag theirs with a run id and the evaluated pair."""
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import field_validator
from sqlmodel import JSON, Column, Field, SQLModel

from .base import TimestampMixin


class LogLevelEnum(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class LogBase(SQLModel):
    level: LogLevelEnum = Field(default=LogLevelEnum.INFO, index=True)
    message: str
    details: Optional[Dict[str, Any]] = Field(default_factory=dict, sa_column=Column(JSON))
    run_id: Optional[str] = Field(default=None, index=True)
    dataset: Optional[str] = Field(default=None, index=True)
    method: Optional[str] = Field(default=None, index=True)

    @field_validator("level", mode="before")
    @classmethod
    def upper_level(cls, value):
        return value.upper() if isinstance(value, str) else value


class Log(LogBase, TimestampMixin, table=True):
    id: Optional[int] = Field(default=None, primary_key=True)


class LogCreate(LogBase):
    pass


class LogRead(LogBase):
    id: int
    created_at: datetime
