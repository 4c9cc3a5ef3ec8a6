"""
Store builders: the deterministic synthetic seeder and the hand-auditable
fixture S0.

Both produce a store document first (pure, digestible) and then load it into a
CommunityStore.
"""

import math
import random
from pathlib import Path
from typing import Any, Dict, List, Union

from database.schemas import STORE_VERSION, SeedConfig
from database.store import CommunityStore
from program.builders import block, program, script, sprite
from program.generator import ProgramGenerator
from program.parser import program_to_data
from utils.exceptions import ConfigurationError
from utils.json_loader import digest, read_json_file, validate_model
from utils.logger import log_store_operation

_ADJECTIVES = ("Happy", "Tiny", "Space", "Magic", "Super", "Dancing", "Lost", "Pixel")
_NOUNS = ("Cat", "Maze", "Pong", "Quiz", "Garden", "Robot", "Dragon", "Band")
_ABOUT = ("", "hi", "I like games", "artist", "music and maths", "learning to code")
_DESCRIPTIONS = ("", "fun maze", "use the arrow keys", "my first project", "remix welcome")


def poisson(rng: random.Random, mean: float) -> int:
    """Knuth's sampler; fine for the small means used here"""
    if mean <= 0:
        return 0
    threshold = math.exp(-mean)
    k = 0
    p = rng.random()
    while p > threshold:
        k += 1
        p *= rng.random()
    return k


def load_seed_config(source: Union[str, Path, Dict[str, Any]]) -> SeedConfig:
    """Validate a seed config file or dict; errors name the offending field"""
    data = read_json_file(source) if isinstance(source, (str, Path)) else source
    return validate_model(SeedConfig, data, ConfigurationError)


def seed_document(config: SeedConfig) -> Dict[str, Any]:
    """Generate a store document; equal configs give equal documents"""
    rng = random.Random(config.seed)
    generator = ProgramGenerator(rng, community=False, max_depth=2)

    users: List[Dict[str, Any]] = []
    for index in range(config.users):
        users.append({
            "username": f"scratcher{index + 1:03d}",
            "about": rng.choice(_ABOUT),
            "country": rng.choice(config.countries),
        })

    projects: List[Dict[str, Any]] = []
    for user in users:
        for _ in range(rng.randint(0, config.max_projects_per_user)):
            project_id = len(projects) + 1
            projects.append({
                "id": project_id,
                "author": user["username"],
                "title": f"{rng.choice(_ADJECTIVES)} {rng.choice(_NOUNS)}",
                "description": rng.choice(_DESCRIPTIONS),
                "loves": poisson(rng, config.love_mean),
                "favorites_count": 0,
                "comments_count": poisson(rng, config.comment_mean),
                "created_seq": project_id,
                "code": program_to_data(generator.program(sprites=1)),
            })

    edges: List[Dict[str, Any]] = []
    for source in users:
        for target in users:
            if source is not target and rng.random() < config.follow_prob:
                edges.append({
                    "kind": "follow",
                    "source": source["username"],
                    "target": target["username"],
                    "seq": len(edges) + 1,
                })
    for source in users:
        for project in projects:
            if project["author"] != source["username"] and rng.random() < config.favorite_prob:
                project["favorites_count"] += 1
                edges.append({
                    "kind": "favorite",
                    "source": source["username"],
                    "target": project["id"],
                    "seq": len(edges) + 1,
                })

    return {"version": STORE_VERSION, "users": users, "projects": projects, "edges": edges, "cloud": []}


async def load_seed(
    config: Union[SeedConfig, Dict[str, Any]],
    database_url: str = "sqlite+aiosqlite:///:memory:",
    echo: bool = False,
) -> CommunityStore:
    """Generate and load a synthetic community"""
    if not isinstance(config, SeedConfig):
        config = load_seed_config(config)
    document = seed_document(config)
    store = await CommunityStore.from_document(document, database_url, echo)
    log_store_operation(
        operation="SEED",
        model="store",
        success=True,
        details={"seed": config.seed, "users": config.users, "digest": digest(document)[:12]},
    )
    return store


def _code(*statements) -> Dict[str, Any]:
    """Project code as one detached stack, so no hat block is counted"""
    return program_to_data(program(sprite("Sprite1", script(None, *statements))))


def fixture_s0_document() -> Dict[str, Any]:
    """The canonical three-user fixture"""
    def project(pid, author, title, description, loves, favorites, comments, code):
        return {
            "id": pid,
            "author": author,
            "title": title,
            "description": description,
            "loves": loves,
            "favorites_count": favorites,
            "comments_count": comments,
            "created_seq": pid,
            "code": code,
        }

    return {
        "version": STORE_VERSION,
        "users": [
            {"username": "alice", "about": "hi", "country": "Spain"},
            {"username": "bob", "about": "", "country": "USA"},
            {"username": "carol", "about": "artist", "country": "Spain"},
        ],
        "projects": [
            project(1, "alice", "Cat Maze", "fun maze", 3, 2, 1, _code(
                block("say", "Welcome to the maze!"),
                block("say", "Find the cheese"),
                block("play_sound", sound="meow"),
            )),
            project(2, "alice", "Pong", "", 1, 5, 0, _code(block("say", "Pong!"))),
            project(3, "bob", "Quiz", "abc", 0, 0, 4, _code(block("ask", block("answer")))),
        ],
        "edges": [
            {"kind": "follow", "source": "bob", "target": "alice", "seq": 1},
            {"kind": "follow", "source": "carol", "target": "alice", "seq": 2},
            {"kind": "follow", "source": "alice", "target": "carol", "seq": 3},
            {"kind": "favorite", "source": "alice", "target": 3, "seq": 4},
            {"kind": "favorite", "source": "carol", "target": 1, "seq": 5},
        ],
        "cloud": [],
    }


async def build_fixture_s0(database_url: str = "sqlite+aiosqlite:///:memory:", echo: bool = False) -> CommunityStore:
    return await CommunityStore.from_document(fixture_s0_document(), database_url, echo)


__all__ = [
    "poisson",
    "load_seed_config",
    "seed_document",
    "load_seed",
    "fixture_s0_document",
    "build_fixture_s0",
]
