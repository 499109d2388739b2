from typing import List, Optional

from fastapi import APIRouter, Depends, status
from sqlmodel import Session

from ..database import get_session
from ..models.log import LogCreate, LogRead
from ..services import log_service

router = APIRouter(
    prefix="/api/logs",
    tags=["logs"],
    responses={404: {"description": "Not found"}},
)


@router.post("/", response_model=LogRead, status_code=status.HTTP_201_CREATED)
def create_new_log(log: LogCreate, session: Session = Depends(get_session)):
    """
    Create a log entry, e.g. from a script driving a benchmark.
    """
    return log_service.create_log(session=session, log=log)


@router.get("/", response_model=List[LogRead])
def read_logs(
    run_id: Optional[str] = None,
    level: Optional[str] = None,
    dataset: Optional[str] = None,
    method: Optional[str] = None,
    skip: int = 0,
    limit: int = 100,
    session: Session = Depends(get_session)
):
    """
    Log records, oldest first. Bench runs tag theirs with a run id, dataset and method.
    """
    return log_service.read_logs(session, run_id=run_id, level=level, dataset=dataset,
                                 method=method, skip=skip, limit=limit)
