"""Stored benchmark results API routes."""
from typing import List, Optional

from fastapi import APIRouter, Depends, HTTPException, status
from sqlmodel import Session, select

from ..database import get_session
from ..models import EvalRecord

router = APIRouter(prefix="/api/results", tags=["results"])


@router.get("/", response_model=List[EvalRecord])
def read_results(
    dataset: Optional[str] = None,
    method: Optional[str] = None,
    run_id: Optional[str] = None,
    skip: int = 0,
    limit: int = 500,
    session: Session = Depends(get_session)
):
    """Stored EvalRecords, optionally filtered by dataset, method or run."""
    statement = select(EvalRecord)
    if dataset:
        statement = statement.where(EvalRecord.dataset == dataset)
    if method:
        statement = statement.where(EvalRecord.method == method.lower())
    if run_id:
        statement = statement.where(EvalRecord.run_id == run_id)
    return list(session.exec(statement.order_by(EvalRecord.id).offset(skip).limit(limit)).all())


@router.get("/{record_id}", response_model=EvalRecord)
def read_result(record_id: int, session: Session = Depends(get_session)):
    record = session.get(EvalRecord, record_id)
    if not record:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Result not found")
    return record
