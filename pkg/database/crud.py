"""
CRUD operations over the community store tables.

All methods take an open AsyncSession; transaction boundaries and locking are
owned by CommunityStore.
"""

from datetime import datetime
from typing import List, Optional, Tuple

from sqlalchemy import func, select
from sqlalchemy.ext.asyncio import AsyncSession
from sqlalchemy.orm import aliased

from database.models import CloudVar, EdgeKind, Project, Relation, RelationEdge, User
from utils.logger import log_store_operation


def _elapsed_ms(start_time: datetime) -> float:
    return (datetime.utcnow() - start_time).total_seconds() * 1000


class UserCRUD:
    """Users"""

    @staticmethod
    async def create(session: AsyncSession, username: str, about: str, country: str, seq: int) -> User:
        user = User(username=username, about=about, country=country, seq=seq)
        session.add(user)
        await session.flush()
        return user

    @staticmethod
    async def get(session: AsyncSession, username: str) -> Optional[User]:
        return await session.get(User, username)

    @staticmethod
    async def list_all(session: AsyncSession) -> List[User]:
        result = await session.execute(select(User).order_by(User.seq))
        return list(result.scalars().all())

    @staticmethod
    async def count(session: AsyncSession) -> int:
        result = await session.execute(select(func.count()).select_from(User))
        return result.scalar_one()

    @staticmethod
    async def next_seq(session: AsyncSession) -> int:
        result = await session.execute(select(func.max(User.seq)))
        return (result.scalar_one() or 0) + 1


class ProjectCRUD:
    """Projects"""

    @staticmethod
    async def create(session: AsyncSession, **fields) -> Project:
        project = Project(**fields)
        session.add(project)
        await session.flush()
        return project

    @staticmethod
    async def get(session: AsyncSession, project_id: int) -> Optional[Project]:
        return await session.get(Project, project_id)

    @staticmethod
    async def list_all(session: AsyncSession) -> List[Project]:
        result = await session.execute(select(Project).order_by(Project.created_seq))
        return list(result.scalars().all())

    @staticmethod
    async def count(session: AsyncSession) -> int:
        result = await session.execute(select(func.count()).select_from(Project))
        return result.scalar_one()

    @staticmethod
    async def total_comments(session: AsyncSession) -> int:
        result = await session.execute(select(func.coalesce(func.sum(Project.comments_count), 0)))
        return int(result.scalar_one())

    @staticmethod
    async def next_id(session: AsyncSession) -> Tuple[int, int]:
        """Next free (id, created_seq)"""
        result = await session.execute(select(func.max(Project.id), func.max(Project.created_seq)))
        max_id, max_seq = result.one()
        return (max_id or 0) + 1, (max_seq or 0) + 1


class RelationCRUD:
    """Follow and favorite edges, and the four relation lists built on them"""

    @staticmethod
    async def add(
        session: AsyncSession,
        kind: EdgeKind,
        source: str,
        seq: int,
        target_user: Optional[str] = None,
        target_project: Optional[int] = None,
    ) -> RelationEdge:
        edge = RelationEdge(
            seq=seq,
            kind=kind.value,
            source=source,
            target_user=target_user,
            target_project=target_project,
        )
        session.add(edge)
        await session.flush()
        return edge

    @staticmethod
    async def exists(
        session: AsyncSession,
        kind: EdgeKind,
        source: str,
        target_user: Optional[str] = None,
        target_project: Optional[int] = None,
    ) -> bool:
        stmt = select(RelationEdge.seq).where(
            RelationEdge.kind == kind.value,
            RelationEdge.source == source,
        )
        if kind is EdgeKind.FOLLOW:
            stmt = stmt.where(RelationEdge.target_user == target_user)
        else:
            stmt = stmt.where(RelationEdge.target_project == target_project)
        result = await session.execute(stmt.limit(1))
        return result.first() is not None

    @staticmethod
    async def list_all(session: AsyncSession) -> List[RelationEdge]:
        result = await session.execute(select(RelationEdge).order_by(RelationEdge.seq))
        return list(result.scalars().all())

    @staticmethod
    async def next_seq(session: AsyncSession) -> int:
        result = await session.execute(select(func.max(RelationEdge.seq)))
        return (result.scalar_one() or 0) + 1

    @staticmethod
    def _related_query(relation: Relation, username: str):
        """SELECT for one relation list, in its canonical order"""
        if relation is Relation.SHARED:
            return (
                select(Project)
                .where(Project.author == username)
                .order_by(Project.created_seq)
            )
        if relation is Relation.FAVORITED:
            return (
                select(Project)
                .join(RelationEdge, RelationEdge.target_project == Project.id)
                .where(RelationEdge.kind == EdgeKind.FAVORITE.value, RelationEdge.source == username)
                .order_by(RelationEdge.seq)
            )
        other = aliased(User)
        if relation is Relation.FOLLOWERS:
            return (
                select(other)
                .join(RelationEdge, RelationEdge.source == other.username)
                .where(RelationEdge.kind == EdgeKind.FOLLOW.value, RelationEdge.target_user == username)
                .order_by(RelationEdge.seq)
            )
        return (
            select(other)
            .join(RelationEdge, RelationEdge.target_user == other.username)
            .where(RelationEdge.kind == EdgeKind.FOLLOW.value, RelationEdge.source == username)
            .order_by(RelationEdge.seq)
        )

    @staticmethod
    async def list_related(
        session: AsyncSession,
        relation: Relation,
        username: str,
        offset: int = 0,
        limit: Optional[int] = None,
    ) -> list:
        """One window (or the whole) of a relation list as ORM objects"""
        start_time = datetime.utcnow()
        stmt = RelationCRUD._related_query(relation, username).offset(offset)
        if limit is not None:
            stmt = stmt.limit(limit)
        result = await session.execute(stmt)
        items = list(result.scalars().all())
        log_store_operation(
            operation="SELECT",
            model=relation.value,
            success=True,
            duration_ms=_elapsed_ms(start_time),
            details={"username": username, "offset": offset, "limit": limit, "rows": len(items)},
        )
        return items

    @staticmethod
    async def count_related(session: AsyncSession, relation: Relation, username: str) -> int:
        subquery = RelationCRUD._related_query(relation, username).order_by(None).subquery()
        result = await session.execute(select(func.count()).select_from(subquery))
        return result.scalar_one()


class CloudCRUD:
    """Cloud variables"""

    @staticmethod
    async def get(session: AsyncSession, project_id: int, name: str) -> Optional[CloudVar]:
        return await session.get(CloudVar, (project_id, name))

    @staticmethod
    async def put(session: AsyncSession, project_id: int, name: str, value: float) -> CloudVar:
        variable = await CloudCRUD.get(session, project_id, name)
        if variable is None:
            variable = CloudVar(project_id=project_id, name=name, value=value)
            session.add(variable)
        else:
            variable.value = value
        await session.flush()
        return variable

    @staticmethod
    async def list_all(session: AsyncSession) -> List[CloudVar]:
        result = await session.execute(select(CloudVar).order_by(CloudVar.project_id, CloudVar.name))
        return list(result.scalars().all())


__all__ = ["UserCRUD", "ProjectCRUD", "RelationCRUD", "CloudCRUD"]
