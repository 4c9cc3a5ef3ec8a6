"""
Community data model: users, projects, relation edges and cloud variables
"""

from database.database import DatabaseManager
from database.crud import CloudCRUD, ProjectCRUD, RelationCRUD, UserCRUD
from database.models import (
    Base,
    CloudVar,
    CommunityStats,
    EdgeKind,
    Project,
    Relation,
    RelationEdge,
    User,
)
from database.schemas import SeedConfig, StoreDocument
from database.seed import build_fixture_s0, fixture_s0_document, load_seed, load_seed_config, seed_document
from database.store import CommunityStore

__all__ = [
    # Database management
    "DatabaseManager",
    "CommunityStore",
    # CRUD classes
    "UserCRUD",
    "ProjectCRUD",
    "RelationCRUD",
    "CloudCRUD",
    # Models
    "Base",
    "User",
    "Project",
    "RelationEdge",
    "CloudVar",
    "CommunityStats",
    # Enums
    "EdgeKind",
    "Relation",
    # Documents and seeding
    "SeedConfig",
    "StoreDocument",
    "seed_document",
    "load_seed",
    "load_seed_config",
    "fixture_s0_document",
    "build_fixture_s0",
]
