"""Augmentation method registry API routes."""
from typing import List

from fastapi import APIRouter, HTTPException, status

from ..exceptions import UnknownMethodError
from ..models import MethodInfo
from ..services.registry import get_method, list_methods

router = APIRouter(prefix="/api/methods", tags=["methods"])


@router.get("/", response_model=List[MethodInfo])
def read_methods():
    """All registered methods, the `none` baseline first."""
    return list_methods()


@router.get("/{name}", response_model=MethodInfo)
def read_method(name: str):
    try:
        return get_method(name)
    except UnknownMethodError as exc:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(exc))
