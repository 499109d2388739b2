"""Registered augmentation methods and how they are grouped."""
from enum import Enum

from sqlmodel import SQLModel


class CategoryEnum(str, Enum):
    BASELINE = "baseline"
    TRANSFORMATION = "transformation"
    PATTERN = "pattern"
    DECOMPOSITION = "decomposition"


class BranchEnum(str, Enum):
    BASELINE = "baseline"
    MAGNITUDE = "magnitude"
    TIME = "time"
    FREQUENCY = "frequency"
    PATTERN = "pattern"
    DECOMPOSITION = "decomposition"


class PoolRequirementEnum(str, Enum):
    """What a method needs from the training split besides the sample."""
    NONE = "none"
    PAIR = "same-class pair"
    GROUP = "same-class group"
    DISCRIMINATIVE = "same+other class"


class MethodInfo(SQLModel):
    name: str
    display_name: str
    category: CategoryEnum
    branch: BranchEnum
    pool: PoolRequirementEnum = PoolRequirementEnum.NONE

    @property
    def needs_pool(self) -> bool:
        return self.pool != PoolRequirementEnum.NONE
