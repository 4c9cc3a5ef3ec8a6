"""
Pydantic models of the two JSON files the store reads: the store document and
the seed configuration.
"""

import math
from typing import Any, Dict, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

STORE_VERSION = 1


class UserDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    username: str = Field(min_length=1)
    about: str = ""
    country: str = ""


class ProjectDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int = Field(gt=0)
    author: str
    title: str = ""
    description: str = ""
    loves: int = Field(default=0, ge=0)
    favorites_count: int = Field(default=0, ge=0)
    comments_count: int = Field(default=0, ge=0)
    created_seq: int
    code: Dict[str, Any]


class EdgeDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["follow", "favorite"]
    source: str
    target: Union[int, str]
    seq: int

    @model_validator(mode="after")
    def check_target(self) -> "EdgeDoc":
        if self.kind == "follow":
            if not isinstance(self.target, str):
                raise ValueError("follow target must be a username")
            if self.target == self.source:
                raise ValueError("users cannot follow themselves")
        elif not isinstance(self.target, int):
            raise ValueError("favorite target must be a project id")
        return self


class CloudDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    project_id: int
    name: str
    value: float

    @field_validator("value")
    @classmethod
    def check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("value must be finite")
        return value


class StoreDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: int
    users: List[UserDoc] = []
    projects: List[ProjectDoc] = []
    edges: List[EdgeDoc] = []
    cloud: List[CloudDoc] = []

    @field_validator("version")
    @classmethod
    def check_version(cls, version: int) -> int:
        if version != STORE_VERSION:
            raise ValueError(f"unsupported store version {version}")
        return version


class SeedConfig(BaseModel):
    """Parameters of the synthetic community generator"""
    model_config = ConfigDict(extra="forbid")

    seed: int
    users: int
    max_projects_per_user: int = 3
    follow_prob: float = 0.05
    favorite_prob: float = 0.02
    love_mean: float = 3.0
    comment_mean: float = 2.0
    countries: List[str] = ["Spain", "USA"]

    @field_validator("users")
    @classmethod
    def check_users(cls, users: int) -> int:
        if users < 1:
            raise ValueError("users must be ≥ 1")
        return users

    @field_validator("max_projects_per_user")
    @classmethod
    def check_max_projects(cls, value: int) -> int:
        if value < 0:
            raise ValueError("max_projects_per_user must be ≥ 0")
        return value

    @field_validator("follow_prob", "favorite_prob")
    @classmethod
    def check_probability(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError("probability must be in [0, 1]")
        return value

    @field_validator("love_mean", "comment_mean")
    @classmethod
    def check_mean(cls, value: float) -> float:
        if not math.isfinite(value) or value < 0:
            raise ValueError("mean must be a finite number ≥ 0")
        return value

    @field_validator("countries")
    @classmethod
    def check_countries(cls, countries: List[str]) -> List[str]:
        if not countries:
            raise ValueError("countries must not be empty")
        return countries


__all__ = [
    "STORE_VERSION",
    "UserDoc",
    "ProjectDoc",
    "EdgeDoc",
    "CloudDoc",
    "StoreDocument",
    "SeedConfig",
]
