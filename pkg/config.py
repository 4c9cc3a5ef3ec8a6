"""
Application configuration.

Loads values from the environment (and a local .env file) into plain
dataclasses. CLI options override these per invocation.
"""

from dataclasses import dataclass
from pathlib import Path
import os

from dotenv import load_dotenv

from utils.exceptions import ConfigurationError

load_dotenv()

MAX_PAGE_SIZE = 100
TICKS_PER_SECOND = 30


@dataclass
class Api:
    """API service configuration"""
    host: str = "127.0.0.1"
    port: int = 8080
    page_size: int = 20
    max_page_size: int = MAX_PAGE_SIZE

    @property
    def base_url(self) -> str:
        return f"http://{self.host}:{self.port}"


@dataclass
class Interpreter:
    """Scheduler configuration"""
    max_ticks: int = 10000
    latency_ticks: int = 1
    ticks_per_second: int = TICKS_PER_SECOND


@dataclass
class Database:
    """Community store database configuration"""
    url: str = "sqlite+aiosqlite:///:memory:"
    echo: bool = False

    @property
    def is_memory(self) -> bool:
        """In-memory SQLite needs a single shared connection"""
        return ":memory:" in self.url or self.url.endswith("://")


@dataclass
class Paths:
    """Directories used by the CLI"""
    content: Path
    logs: Path

    @property
    def fixture_store(self) -> Path:
        return self.content / "stores" / "s0.json"

    @property
    def default_seed_config(self) -> Path:
        return self.content / "seed" / "default.json"


@dataclass
class Config:
    """Top-level configuration"""
    api: Api
    interpreter: Interpreter
    db: Database
    paths: Paths
    log_level: str = "INFO"
    log_to_file: bool = False
    debug: bool = False


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(name, f"expected an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(name, f"must be >= {minimum}")
    return value


def _env_bool(name: str, default: bool = False) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


def load_config() -> Config:
    """
    Load and validate configuration from environment variables.

    Returns:
        Config: application configuration

    Raises:
        ConfigurationError: if a variable is malformed
    """
    page_size = _env_int("SCB_PAGE_SIZE", 20, minimum=1)
    if page_size > MAX_PAGE_SIZE:
        raise ConfigurationError("SCB_PAGE_SIZE", f"must be <= {MAX_PAGE_SIZE}")

    base_dir = Path(__file__).parent

    return Config(
        api=Api(
            host=os.getenv("SCB_API_HOST", "127.0.0.1"),
            port=_env_int("SCB_API_PORT", 8080, minimum=0),
            page_size=page_size,
        ),
        interpreter=Interpreter(
            max_ticks=_env_int("SCB_MAX_TICKS", 10000, minimum=1),
            latency_ticks=_env_int("SCB_LATENCY_TICKS", 1, minimum=1),
        ),
        db=Database(
            url=os.getenv("SCB_DATABASE_URL", "sqlite+aiosqlite:///:memory:"),
            echo=_env_bool("SCB_DB_ECHO"),
        ),
        paths=Paths(
            content=Path(os.getenv("SCB_CONTENT_DIR", str(base_dir / "content"))),
            logs=Path(os.getenv("SCB_LOGS_DIR", str(base_dir / "logs"))),
        ),
        log_level=os.getenv("SCB_LOG_LEVEL", "INFO").upper(),
        log_to_file=_env_bool("SCB_LOG_TO_FILE"),
        debug=_env_bool("SCB_DEBUG"),
    )
