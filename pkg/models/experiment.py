import json
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from utils.constants import (
    DEFAULT_K,
    DEFAULT_NAVIGATION_G,
    DEFAULT_PURCHASE_G,
    DEFAULT_SPLIT,
    DEFAULT_TRIALS,
    PURCHASE_MIN_COUNT,
    NAVIGATION_MIN_VISITS,
)
from utils.errors import InputError


class SequenceLog(BaseModel):
    """Per-user ordered item lists; repeats keep only the first occurrence."""

    entries: List[Tuple[str, Tuple[str, ...]]] = Field(default_factory=list)

    @field_validator("entries")
    @classmethod
    def _dedupe(cls, entries):
        return [(user, tuple(dict.fromkeys(items))) for user, items in entries]

    def __len__(self) -> int:
        return len(self.entries)

    def users(self) -> List[str]:
        return [user for user, _ in self.entries]

    def items(self) -> List[str]:
        return sorted({item for _, items in self.entries for item in items})

    def as_dict(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self.entries)

    def subset(self, users: List[str]) -> "SequenceLog":
        table = self.as_dict()
        return SequenceLog.model_construct(entries=[(u, table[u]) for u in users])


class LinkTable(BaseModel):
    links: List[Tuple[str, str]] = Field(default_factory=list)

    @field_validator("links")
    @classmethod
    def _unique(cls, links):
        return sorted(set(links))

    def __contains__(self, pair: Tuple[str, str]) -> bool:
        return pair in self.lookup

    @cached_property
    def lookup(self) -> frozenset:
        return frozenset(self.links)

    def pages(self) -> List[str]:
        return sorted({page for pair in self.links for page in pair})


Task = Literal["purchase", "navigation"]
PURCHASE_POLICIES = ("adaptive-greedy", "greedy", "frequency")
NAVIGATION_POLICIES = ("path-greedy",)


class ExperimentConfig(BaseModel):
    task: Task = "purchase"
    g: Optional[int] = Field(None, ge=0)
    k: int = Field(DEFAULT_K, ge=0)
    k_values: Optional[List[int]] = None
    split: float = Field(DEFAULT_SPLIT, gt=0.0, lt=1.0)
    train_fraction: float = Field(1.0, gt=0.0, le=1.0)
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    seed: int = 0
    min_count: int = Field(PURCHASE_MIN_COUNT, ge=1)
    min_visits: int = Field(NAVIGATION_MIN_VISITS, ge=1)
    policies: Optional[List[str]] = None
    utility: str = "coverage"
    tie: str = "lowest-id"

    @model_validator(mode="after")
    def _check_budgets(self):
        # task-dependent defaults
        if self.g is None:
            self.g = DEFAULT_NAVIGATION_G if self.task == "navigation" else DEFAULT_PURCHASE_G
        if self.policies is None:
            self.policies = list(NAVIGATION_POLICIES if self.task == "navigation" else PURCHASE_POLICIES)
        if self.k_values is not None and any(k < 0 for k in self.k_values):
            raise ValueError(f"k_values must be non-negative, got {self.k_values}")
        return self

    def budgets(self) -> List[int]:
        return sorted(set(self.k_values)) if self.k_values else [self.k]

    @classmethod
    def load(cls, path: Optional[Path] = None, **overrides) -> "ExperimentConfig":
        """Config file values, then flag overrides (None means the flag was not given)."""
        data = {}
        if path is not None:
            try:
                data = json.loads(Path(path).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as e:
                raise InputError(f"cannot read config {path}: {e}") from e
            if not isinstance(data, dict):
                raise InputError(f"config {path} must hold a JSON object")
        data.update({key: value for key, value in overrides.items() if value is not None})
        return cls.build(**data)

    @classmethod
    def build(cls, **values) -> "ExperimentConfig":
        try:
            return cls(**values)
        except ValidationError as e:
            raise InputError(str(e)) from e


class UserScore(BaseModel):
    trial: int
    k: int
    policy: str
    user: str
    accuracy: float
    sequence_score: float
    relevance_distance: Optional[float] = None


class MetricRow(BaseModel):
    trial: int
    k: int
    policy: str
    users: int
    skipped: int
    accuracy: float
    sequence_score: float
    relevance_distance: Optional[float] = None


class MetricSummary(BaseModel):
    k: int
    policy: str
    trials: int
    accuracy_mean: float
    accuracy_se: float
    sequence_score_mean: float
    sequence_score_se: float
    relevance_distance_mean: Optional[float] = None
    relevance_distance_se: Optional[float] = None


def _mean_se(values: List[float]) -> Tuple[float, float]:
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        return 0.0, 0.0
    se = float(data.std(ddof=1) / np.sqrt(data.size)) if data.size > 1 else 0.0
    return float(data.mean()), se


class MetricReport(BaseModel):
    task: Task
    rows: List[MetricRow] = Field(default_factory=list)
    users: List[UserScore] = Field(default_factory=list)

    def summary(self) -> List[MetricSummary]:
        """Mean and standard error across trials per (k, policy)."""
        groups: Dict[Tuple[int, str], List[MetricRow]] = {}
        for row in self.rows:
            groups.setdefault((row.k, row.policy), []).append(row)
        result = []
        for (k, policy), rows in groups.items():
            accuracy = _mean_se([r.accuracy for r in rows])
            sequence = _mean_se([r.sequence_score for r in rows])
            relevance = None, None
            if self.task == "navigation":
                relevance = _mean_se([r.relevance_distance for r in rows if r.relevance_distance is not None])
            result.append(
                MetricSummary(
                    k=k,
                    policy=policy,
                    trials=len(rows),
                    accuracy_mean=accuracy[0],
                    accuracy_se=accuracy[1],
                    sequence_score_mean=sequence[0],
                    sequence_score_se=sequence[1],
                    relevance_distance_mean=relevance[0],
                    relevance_distance_se=relevance[1],
                )
            )
        return result
