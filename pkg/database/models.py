"""
SQLAlchemy models of the community store
"""

from dataclasses import dataclass
from enum import Enum as PyEnum
from typing import Any, Dict, Optional

from sqlalchemy import Float, ForeignKey, Index, Integer, String, Text, UniqueConstraint
from sqlalchemy.ext.asyncio import AsyncAttrs
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column


class Base(AsyncAttrs, DeclarativeBase):
    """Base class for all models"""
    pass


class EdgeKind(str, PyEnum):
    """Relation edge kinds"""
    FOLLOW = "follow"
    FAVORITE = "favorite"


class Relation(str, PyEnum):
    """The four community lists"""
    SHARED = "shared"
    FAVORITED = "favorited"
    FOLLOWERS = "followers"
    FOLLOWING = "following"

    @property
    def lists_projects(self) -> bool:
        return self in (Relation.SHARED, Relation.FAVORITED)


class User(Base):
    """Community member; the username is the only external key"""
    __tablename__ = 'users'

    username: Mapped[str] = mapped_column(String(64), primary_key=True)
    about: Mapped[str] = mapped_column(Text, default="")
    country: Mapped[str] = mapped_column(String(64), default="")
    # insertion order, used to serialize the store deterministically
    seq: Mapped[int] = mapped_column(Integer, unique=True, nullable=False)

    def __repr__(self):
        return f"<User(username={self.username}, country={self.country})>"

    def to_json(self) -> Dict[str, Any]:
        return {"username": self.username, "about": self.about, "country": self.country}


class Project(Base):
    """Shared project with its social counters and stored code"""
    __tablename__ = 'projects'

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=False)
    author: Mapped[str] = mapped_column(ForeignKey('users.username'), nullable=False, index=True)
    title: Mapped[str] = mapped_column(Text, default="")
    description: Mapped[str] = mapped_column(Text, default="")
    loves: Mapped[int] = mapped_column(Integer, default=0)
    favorites_count: Mapped[int] = mapped_column(Integer, default=0)
    comments_count: Mapped[int] = mapped_column(Integer, default=0)
    # canonical program JSON
    code: Mapped[str] = mapped_column(Text, nullable=False)
    created_seq: Mapped[int] = mapped_column(Integer, unique=True, nullable=False)

    __table_args__ = (
        Index('idx_projects_author_seq', 'author', 'created_seq'),
    )

    def __repr__(self):
        return f"<Project(id={self.id}, author={self.author}, title={self.title})>"

    def to_json(self) -> Dict[str, Any]:
        """API item shape (no code)"""
        return {
            "id": self.id,
            "title": self.title,
            "description": self.description,
            "loves": self.loves,
            "favorites": self.favorites_count,
            "comments": self.comments_count,
            "author": self.author,
        }


class RelationEdge(Base):
    """Follow (user → user) or favorite (user → project) edge"""
    __tablename__ = 'edges'

    seq: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=False)
    kind: Mapped[str] = mapped_column(String(16), nullable=False)
    source: Mapped[str] = mapped_column(ForeignKey('users.username'), nullable=False)
    target_user: Mapped[Optional[str]] = mapped_column(ForeignKey('users.username'), nullable=True)
    target_project: Mapped[Optional[int]] = mapped_column(ForeignKey('projects.id'), nullable=True)

    __table_args__ = (
        UniqueConstraint('kind', 'source', 'target_user', 'target_project', name='uq_edges_kind_source_target'),
        Index('idx_edges_source', 'kind', 'source', 'seq'),
        Index('idx_edges_target_user', 'kind', 'target_user', 'seq'),
    )

    @property
    def target(self):
        return self.target_user if self.kind == EdgeKind.FOLLOW.value else self.target_project

    def __repr__(self):
        return f"<RelationEdge(seq={self.seq}, {self.kind} {self.source} -> {self.target})>"

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "source": self.source, "target": self.target, "seq": self.seq}


class CloudVar(Base):
    """Persistent numeric variable of one project"""
    __tablename__ = 'cloud_vars'

    project_id: Mapped[int] = mapped_column(ForeignKey('projects.id'), primary_key=True)
    name: Mapped[str] = mapped_column(String(255), primary_key=True)
    value: Mapped[float] = mapped_column(Float, default=0.0)

    def to_json(self) -> Dict[str, Any]:
        return {"project_id": self.project_id, "name": self.name, "value": self.value}


@dataclass(frozen=True)
class CommunityStats:
    """Community-wide totals"""
    projects: int
    users: int
    comments: int

    def to_json(self) -> Dict[str, int]:
        return {"projects": self.projects, "users": self.users, "comments": self.comments}


__all__ = [
    "Base",
    "EdgeKind",
    "Relation",
    "User",
    "Project",
    "RelationEdge",
    "CloudVar",
    "CommunityStats",
]
