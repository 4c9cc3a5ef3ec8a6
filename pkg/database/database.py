"""
Engine and session management for the community store.

The store is always rebuilt from a store document, so a file database is
emptied when it is opened. In-memory databases share one connection between
all sessions.
"""

from contextlib import asynccontextmanager
from typing import Any, AsyncGenerator, Dict, Optional

from sqlalchemy import text
from sqlalchemy.ext.asyncio import AsyncEngine, AsyncSession, async_sessionmaker, create_async_engine
from sqlalchemy.pool import NullPool, StaticPool

from database.models import Base
from utils.exceptions import ScbError
from utils.logger import logger

MEMORY_URL = "sqlite+aiosqlite:///:memory:"


class DatabaseManager:
    """Owns the async engine and hands out transactional sessions"""

    def __init__(self, database_url: str = MEMORY_URL, echo: bool = False):
        self.database_url = database_url
        self.echo = echo
        self.engine: Optional[AsyncEngine] = None
        self._sessions: Optional[async_sessionmaker] = None

    @property
    def is_memory(self) -> bool:
        return ":memory:" in self.database_url or self.database_url.endswith("://")

    def _engine_options(self) -> Dict[str, Any]:
        return {
            "echo": self.echo,
            "poolclass": StaticPool if self.is_memory else NullPool,
            "connect_args": {"check_same_thread": False},
        }

    async def init(self) -> None:
        """Open the engine and lay out empty community tables"""
        self.engine = create_async_engine(self.database_url, **self._engine_options())
        self._sessions = async_sessionmaker(self.engine, expire_on_commit=False, autoflush=False)

        try:
            async with self.engine.begin() as conn:
                if not self.is_memory:
                    await conn.run_sync(Base.metadata.drop_all)
                await conn.run_sync(Base.metadata.create_all)
        except Exception as e:
            await self.close()
            logger.error(f"Cannot open community database {self.database_url}: {e}")
            raise ScbError(f"cannot open database {self.database_url}: {e}") from e

        if not await self.check_connection():
            await self.close()
            raise ScbError(f"database {self.database_url} does not answer")
        logger.debug(f"Community database ready: {self.database_url}")

    async def check_connection(self) -> bool:
        if self.engine is None:
            return False
        try:
            async with self.engine.connect() as conn:
                await conn.execute(text("SELECT 1"))
            return True
        except Exception as e:
            logger.error(f"Database connection check failed: {e}")
            return False

    async def close(self) -> None:
        if self.engine is not None:
            await self.engine.dispose()
            self.engine = None
            self._sessions = None

    @asynccontextmanager
    async def get_session(self) -> AsyncGenerator[AsyncSession, None]:
        """
        One transaction: committed when the block exits normally, rolled back
        when it raises

        Yields:
            AsyncSession: SQLAlchemy async session
        """
        if self._sessions is None:
            raise ScbError("community database is not open")

        async with self._sessions() as session:
            try:
                yield session
                await session.commit()
            except ScbError:
                await session.rollback()
                raise
            except Exception as e:
                await session.rollback()
                logger.error(f"Store transaction failed: {e}")
                raise


__all__ = ["DatabaseManager", "MEMORY_URL"]
