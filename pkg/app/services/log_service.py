from typing import List, Optional

from sqlmodel import Session, select

from ..models.log import Log, LogCreate


def create_log(session: Session, log: LogCreate) -> Log:
    """
    Creates a new log entry in the database.
    """
    db_log = Log.model_validate(log)
    session.add(db_log)
    session.commit()
    session.refresh(db_log)
    return db_log


def read_logs(session: Session, run_id: Optional[str] = None, level: Optional[str] = None,
              dataset: Optional[str] = None, method: Optional[str] = None,
              skip: int = 0, limit: int = 100) -> List[Log]:
    """Oldest first, optionally narrowed to one run, level, dataset or method."""
    statement = select(Log)
    if run_id:
        statement = statement.where(Log.run_id == run_id)
    if level:
        statement = statement.where(Log.level == level.upper())
    if dataset:
        statement = statement.where(Log.dataset == dataset)
    if method:
        statement = statement.where(Log.method == method.lower())
    statement = statement.order_by(Log.id).offset(skip).limit(limit)
    return list(session.exec(statement).all())
