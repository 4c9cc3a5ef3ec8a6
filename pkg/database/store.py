"""
CommunityStore: the single entry point to community data.

Wraps the DatabaseManager and the CRUD classes behind one asyncio lock, so
reads see a consistent snapshot and writes (loading, seeding, cloud changes)
are serialized. Every write bumps ``revision``, which the API reports in the
``X-Store-Seq`` header.
"""

import asyncio
import math
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from database.crud import CloudCRUD, ProjectCRUD, RelationCRUD, UserCRUD
from database.database import DatabaseManager
from database.models import CommunityStats, EdgeKind, Project, Relation
from database.schemas import STORE_VERSION, StoreDocument
from program.ast import Program
from program.metadata import CodeMeta, code_metadata
from program.parser import parse_program, program_from_data, program_to_data
from utils.exceptions import NotFoundError, StoreValidationError
from utils.json_loader import canonical_json, digest, read_json_file, validate_model, write_json_file
from utils.logger import log_store_operation, logger

CLOUD_MODES = ("set", "change")


def _code_text(code: Union[Program, Dict[str, Any], str]) -> str:
    """Validated canonical compact JSON of a program"""
    if isinstance(code, str):
        program = parse_program(code)
    elif isinstance(code, Program):
        program = code
    else:
        program = program_from_data(code)
    return canonical_json(program_to_data(program))


class CommunityStore:
    """
    Async facade over the community database.

    Create with ``await CommunityStore.create()``, ``from_document`` or
    ``load``; release with ``close()``.
    """

    def __init__(self, db: DatabaseManager):
        self.db = db
        self._lock = asyncio.Lock()
        self._revision = 0

    # ------------------------------------------------------------ lifecycle

    @classmethod
    async def create(cls, database_url: str = "sqlite+aiosqlite:///:memory:", echo: bool = False) -> "CommunityStore":
        db = DatabaseManager(database_url, echo=echo)
        await db.init()
        return cls(db)

    @classmethod
    async def from_document(
        cls,
        document: Dict[str, Any],
        database_url: str = "sqlite+aiosqlite:///:memory:",
        echo: bool = False,
    ) -> "CommunityStore":
        """Build a store from a decoded store document"""
        store = await cls.create(database_url, echo)
        try:
            await store.import_document(document)
        except Exception:
            await store.close()
            raise
        return store

    @classmethod
    async def load(
        cls,
        file_path: Union[str, Path],
        database_url: str = "sqlite+aiosqlite:///:memory:",
        echo: bool = False,
    ) -> "CommunityStore":
        """Load a store file"""
        return await cls.from_document(read_json_file(file_path), database_url, echo)

    async def close(self) -> None:
        await self.db.close()

    @property
    def revision(self) -> int:
        return self._revision

    # ------------------------------------------------------------ documents

    async def import_document(self, document: Dict[str, Any]) -> None:
        """Insert every entity of a store document; counts are taken as given"""
        start_time = datetime.utcnow()
        doc = validate_model(StoreDocument, document, StoreValidationError)

        async with self._lock:
            async with self.db.get_session() as session:
                for seq, user in enumerate(doc.users, start=1):
                    if await UserCRUD.get(session, user.username) is not None:
                        raise StoreValidationError("users", f"duplicate username {user.username}")
                    await UserCRUD.create(session, user.username, user.about, user.country, seq)

                last_seq = 0
                for project in doc.projects:
                    if await UserCRUD.get(session, project.author) is None:
                        raise StoreValidationError("projects", f"unknown author {project.author}")
                    if await ProjectCRUD.get(session, project.id) is not None:
                        raise StoreValidationError("projects", f"duplicate project id {project.id}")
                    if project.created_seq <= last_seq:
                        raise StoreValidationError("projects", "created_seq must increase with id")
                    last_seq = project.created_seq
                    await ProjectCRUD.create(
                        session,
                        id=project.id,
                        author=project.author,
                        title=project.title,
                        description=project.description,
                        loves=project.loves,
                        favorites_count=project.favorites_count,
                        comments_count=project.comments_count,
                        code=_code_text(project.code),
                        created_seq=project.created_seq,
                    )

                last_edge = 0
                for edge in doc.edges:
                    if edge.seq <= last_edge:
                        raise StoreValidationError("edges", "edge seq must be strictly increasing")
                    last_edge = edge.seq
                    kind = EdgeKind(edge.kind)
                    if kind is EdgeKind.FOLLOW:
                        await self._add_edge(session, kind, edge.source, edge.seq, target_user=edge.target)
                    else:
                        await self._add_edge(session, kind, edge.source, edge.seq, target_project=edge.target)

                for variable in doc.cloud:
                    if await ProjectCRUD.get(session, variable.project_id) is None:
                        raise StoreValidationError("cloud", f"unknown project {variable.project_id}")
                    await CloudCRUD.put(session, variable.project_id, variable.name, variable.value)

            self._revision += 1

        log_store_operation(
            operation="LOAD",
            model="store",
            success=True,
            duration_ms=(datetime.utcnow() - start_time).total_seconds() * 1000,
            details={"users": len(doc.users), "projects": len(doc.projects), "edges": len(doc.edges)},
        )

    async def to_document(self) -> Dict[str, Any]:
        """Serialize the whole store as a versioned document"""
        async with self._lock:
            async with self.db.get_session() as session:
                users = await UserCRUD.list_all(session)
                projects = await ProjectCRUD.list_all(session)
                edges = await RelationCRUD.list_all(session)
                cloud = await CloudCRUD.list_all(session)

        return {
            "version": STORE_VERSION,
            "users": [user.to_json() for user in users],
            "projects": [
                {
                    "id": p.id,
                    "author": p.author,
                    "title": p.title,
                    "description": p.description,
                    "loves": p.loves,
                    "favorites_count": p.favorites_count,
                    "comments_count": p.comments_count,
                    "created_seq": p.created_seq,
                    "code": program_to_data(parse_program(p.code)),
                }
                for p in projects
            ],
            "edges": [edge.to_json() for edge in edges],
            "cloud": [variable.to_json() for variable in cloud],
        }

    async def digest(self) -> str:
        return digest(await self.to_document())

    async def save(self, file_path: Union[str, Path]) -> str:
        """Write the store file; returns its digest"""
        document = await self.to_document()
        write_json_file(file_path, document)
        return digest(document)

    # --------------------------------------------------------------- writes

    async def _add_edge(self, session, kind: EdgeKind, source: str, seq: int,
                        target_user: Optional[str] = None, target_project: Optional[int] = None):
        if await UserCRUD.get(session, source) is None:
            raise StoreValidationError("edges", f"unknown user {source}")
        if kind is EdgeKind.FOLLOW:
            if target_user == source:
                raise StoreValidationError("edges", "users cannot follow themselves")
            if await UserCRUD.get(session, target_user) is None:
                raise StoreValidationError("edges", f"unknown user {target_user}")
        elif await ProjectCRUD.get(session, target_project) is None:
            raise StoreValidationError("edges", f"unknown project {target_project}")
        if await RelationCRUD.exists(session, kind, source, target_user, target_project):
            raise StoreValidationError("edges", f"duplicate {kind.value} edge from {source}")
        return await RelationCRUD.add(session, kind, source, seq, target_user, target_project)

    async def add_user(self, username: str, about: str = "", country: str = "") -> None:
        if not username:
            raise StoreValidationError("username", "must not be empty")
        async with self._lock:
            async with self.db.get_session() as session:
                if await UserCRUD.get(session, username) is not None:
                    raise StoreValidationError("username", f"duplicate username {username}")
                seq = await UserCRUD.next_seq(session)
                await UserCRUD.create(session, username, about, country, seq)
            self._revision += 1

    async def add_project(
        self,
        author: str,
        title: str = "",
        description: str = "",
        code: Union[Program, Dict[str, Any], str, None] = None,
        loves: int = 0,
        comments: int = 0,
    ) -> int:
        """Share a new project; returns its id"""
        if code is None:
            code = {"sprites": [{"name": "Sprite1", "variables": [], "scripts": []}]}
        text = _code_text(code)
        async with self._lock:
            async with self.db.get_session() as session:
                if await UserCRUD.get(session, author) is None:
                    raise NotFoundError("user", author)
                project_id, created_seq = await ProjectCRUD.next_id(session)
                await ProjectCRUD.create(
                    session,
                    id=project_id,
                    author=author,
                    title=title,
                    description=description,
                    loves=loves,
                    favorites_count=0,
                    comments_count=comments,
                    code=text,
                    created_seq=created_seq,
                )
            self._revision += 1
        return project_id

    async def add_follow(self, source: str, target: str) -> None:
        async with self._lock:
            async with self.db.get_session() as session:
                seq = await RelationCRUD.next_seq(session)
                await self._add_edge(session, EdgeKind.FOLLOW, source, seq, target_user=target)
            self._revision += 1

    async def add_favorite(self, source: str, project_id: int) -> None:
        """Favorite a project; its favorites_count follows the edge"""
        async with self._lock:
            async with self.db.get_session() as session:
                seq = await RelationCRUD.next_seq(session)
                await self._add_edge(session, EdgeKind.FAVORITE, source, seq, target_project=project_id)
                project = await ProjectCRUD.get(session, project_id)
                project.favorites_count += 1
            self._revision += 1

    async def cloud_write(self, project_id: int, name: str, mode: str, value: float) -> float:
        """
        Set or change a cloud variable atomically.

        Returns:
            float: the value after the write
        """
        if mode not in CLOUD_MODES:
            raise StoreValidationError("mode", f"must be one of {', '.join(CLOUD_MODES)}")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise StoreValidationError(mode, "value must be a finite number")

        async with self._lock:
            async with self.db.get_session() as session:
                await self._require_project(session, project_id)
                variable = await CloudCRUD.get(session, project_id, name)
                current = variable.value if variable is not None else 0.0
                new_value = float(value) if mode == "set" else current + float(value)
                if not math.isfinite(new_value):
                    raise StoreValidationError(mode, "result must be finite")
                await CloudCRUD.put(session, project_id, name, new_value)
            self._revision += 1

        logger.debug(f"Cloud {mode} {project_id}/{name} -> {new_value}")
        return new_value

    # ---------------------------------------------------------------- reads

    async def _require_user(self, session, username: str):
        user = await UserCRUD.get(session, username)
        if user is None:
            raise NotFoundError("user", username)
        return user

    async def _require_project(self, session, project_id: int) -> Project:
        project = await ProjectCRUD.get(session, project_id)
        if project is None:
            raise NotFoundError("project", project_id)
        return project

    async def user(self, username: str) -> Dict[str, Any]:
        async with self._lock:
            async with self.db.get_session() as session:
                return (await self._require_user(session, username)).to_json()

    async def has_user(self, username: str) -> bool:
        async with self._lock:
            async with self.db.get_session() as session:
                return await UserCRUD.get(session, username) is not None

    async def relation_page(
        self,
        username: str,
        relation: Union[Relation, str],
        offset: int = 0,
        limit: Optional[int] = None,
    ) -> tuple:
        """
        One window of a relation list plus the list's total length.

        Returns:
            tuple: (items as API dicts, total)
        """
        relation = Relation(relation)
        async with self._lock:
            async with self.db.get_session() as session:
                await self._require_user(session, username)
                rows = await RelationCRUD.list_related(session, relation, username, offset, limit)
                total = await RelationCRUD.count_related(session, relation, username)
        return [row.to_json() for row in rows], total

    async def relation_list(self, username: str, relation: Union[Relation, str]) -> List[Dict[str, Any]]:
        """The complete ordered relation list"""
        items, _ = await self.relation_page(username, relation)
        return items

    async def project_meta(self, project_id: int) -> Dict[str, Any]:
        """Project metadata without code"""
        async with self._lock:
            async with self.db.get_session() as session:
                return (await self._require_project(session, project_id)).to_json()

    async def project_code(self, project_id: int) -> Program:
        async with self._lock:
            async with self.db.get_session() as session:
                text = (await self._require_project(session, project_id)).code
        return parse_program(text)

    async def code_meta(self, project_id: int) -> CodeMeta:
        return code_metadata(await self.project_code(project_id))

    async def community_stats(self) -> CommunityStats:
        async with self._lock:
            async with self.db.get_session() as session:
                return CommunityStats(
                    projects=await ProjectCRUD.count(session),
                    users=await UserCRUD.count(session),
                    comments=await ProjectCRUD.total_comments(session),
                )

    async def cloud_read(self, project_id: int, name: str) -> float:
        """Stored value; an unknown variable reads as 0 and is not created"""
        async with self._lock:
            async with self.db.get_session() as session:
                await self._require_project(session, project_id)
                variable = await CloudCRUD.get(session, project_id, name)
                return variable.value if variable is not None else 0.0


__all__ = ["CommunityStore", "CLOUD_MODES"]
