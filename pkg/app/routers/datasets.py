"""Dataset inspection and augmentation API routes."""
import json
from typing import Dict, List, Optional, Union

from fastapi import APIRouter, File, Form, HTTPException, UploadFile, status
from sqlmodel import SQLModel

from ..config import get_settings, resolve_seed
from ..exceptions import TsaugError
from ..models import ArchiveEntry, AugmentSpec, RunLogRecord, RunMeta, SplitEnum
from ..services.catalog_service import check_against_catalog, lookup
from ..services.pipeline_service import PipelineService
from ..services.series_service import (
    dataset_name_from_path, dataset_summary, format_ucr_text, parse_ucr_text
)

router = APIRouter(prefix="/api", tags=["datasets"])


class DatasetDescription(SQLModel):
    name: str
    split: str
    items: int
    classes: int
    length: Union[int, str]
    min_length: int
    max_length: int
    class_histogram: Dict[str, int]
    catalog: Optional[ArchiveEntry] = None
    catalog_mismatches: List[str] = []


class AugmentResponse(SQLModel):
    tsv: str
    meta: RunMeta
    runlog: List[RunLogRecord]


async def _read_upload(file: UploadFile, split: SplitEnum):
    raw = await file.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST,
                            detail=f"{file.filename} is not UTF-8 text")
    name = dataset_name_from_path(file.filename or "upload")
    try:
        return parse_ucr_text(text, name, split, source=file.filename or "upload")
    except TsaugError as exc:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))


@router.post("/datasets/describe", response_model=DatasetDescription)
async def describe_dataset(file: UploadFile = File(...), split: SplitEnum = Form(SplitEnum.TRAIN)):
    """Item count, classes, length and class histogram of an uploaded UCR file."""
    dataset = await _read_upload(file, split)
    return DatasetDescription(
        **dataset_summary(dataset),
        catalog=lookup(dataset.name),
        catalog_mismatches=check_against_catalog(dataset),
    )


@router.post("/augment", response_model=AugmentResponse)
async def augment_dataset(
    file: UploadFile = File(...),
    method: str = Form(...),
    factor: int = Form(4),
    seed: Optional[int] = Form(None),
    params: str = Form("{}"),
):
    """
    Normalize and expand an uploaded training split.

    `params` is a JSON object of dotted keys, e.g. {"sfcc.strata": 8}.
    """
    try:
        overrides = json.loads(params or "{}")
    except json.JSONDecodeError as exc:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST,
                            detail=f"params is not valid JSON: {exc}")
    if not isinstance(overrides, dict):
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST,
                            detail="params must be a JSON object")
    if factor < 1:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail="factor must be >= 1")

    train = await _read_upload(file, SplitEnum.TRAIN)
    spec = AugmentSpec(method=method, params=overrides, factor=factor, seed=resolve_seed(seed))
    try:
        run = PipelineService.augment(train, spec, jobs=get_settings().jobs)
    except TsaugError as exc:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))
    return AugmentResponse(tsv=format_ucr_text(run.dataset), meta=run.meta,
                           runlog=run.runlog.records)
