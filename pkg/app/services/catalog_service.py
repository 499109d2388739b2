"""Reference metadata of the archive datasets used by the evaluation."""
from typing import Dict, List, Optional

from ..models import ArchiveEntry, Dataset, SplitEnum

_ROWS = [
    ("CBF", "Simulated", 30, 900, 3, 128),
    ("ECG5000", "ECG", 500, 4500, 5, 140),
    ("FordB", "Sensor", 3636, 810, 2, 500),
    ("GunPointAgeSpan", "Motion", 135, 316, 2, 150),
    ("ScreenType", "Device", 375, 375, 3, 720),
    ("Strawberry", "Spectro", 613, 370, 2, 235),
    ("Yoga", "Image", 300, 3000, 2, 426),
    ("EOGHorizontalSignal", "EOG", 362, 362, 12, 1250),
    ("Fungi", "HRM", 18, 186, 18, 201),
    ("GestureMidAirD1", "Trajectory", 208, 130, 26, None),
    ("InsectEPGRegularTrain", "EPG", 62, 249, 3, 601),
    ("MelbournePedestrian", "Traffic", 1194, 2439, 10, 24),
    ("PigCVP", "Hemodynamics", 104, 208, 52, 2000),
    ("PowerCons", "Power", 180, 180, 2, 144),
    ("SemgHandMovementCh2", "Spectrum", 450, 450, 6, 1500),
]

ARCHIVE_CATALOG: Dict[str, ArchiveEntry] = {
    row[0].lower(): ArchiveEntry(name=row[0], type=row[1], train_size=row[2],
                                 test_size=row[3], classes=row[4], length=row[5])
    for row in _ROWS
}


def archive_catalog() -> List[ArchiveEntry]:
    return list(ARCHIVE_CATALOG.values())


def lookup(name: str) -> Optional[ArchiveEntry]:
    return ARCHIVE_CATALOG.get(name.lower())


def check_against_catalog(dataset: Dataset) -> List[str]:
    """Mismatches between a loaded split and its catalog entry (if any)."""
    entry = lookup(dataset.name)
    if entry is None:
        return []
    problems = []
    expected_items = entry.train_size if dataset.split == SplitEnum.TRAIN else entry.test_size
    if len(dataset) != expected_items:
        problems.append(f"expected {expected_items} {dataset.split.value} items, found {len(dataset)}")
    # a small training split may not cover every class
    if len(dataset.classes) > entry.classes:
        problems.append(f"expected at most {entry.classes} classes, found {len(dataset.classes)}")
    if entry.length is not None and dataset.fixed_length != entry.length:
        found = dataset.fixed_length if dataset.fixed_length is not None else "variable"
        problems.append(f"expected length {entry.length}, found {found}")
    return problems
