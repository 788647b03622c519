"""Bundled system files used in the tests and as CLI demonstrations."""

from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    """Filesystem path of a bundled fixture, e.g. path("example2")."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(resources.files(__package__) / name)
