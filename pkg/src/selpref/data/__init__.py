"""Bundled toy dataset (taxonomy, senses, triples, eval lists)."""

from importlib.resources import files
from pathlib import Path

_TOY_FILES = ("taxonomy.tsv", "senses.tsv", "triples.tsv",
              "targets.txt", "docs.txt", "instances.tsv")


def toy_path(name: str) -> Path:
    """Filesystem path of a bundled toy file, e.g. ``toy_path('triples.tsv')``."""
    if name not in _TOY_FILES:
        raise KeyError(f"no bundled toy file {name!r}; have {_TOY_FILES}")
    return Path(str(files(__package__) / "toy" / name))
