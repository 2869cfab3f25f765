"""Bundled data files: stopword list, coarse POS lexicon, and toy corpora."""

from importlib import resources
from pathlib import Path


def data_path(*parts: str) -> Path:
    """Filesystem path of a bundled data file, e.g. data_path("toy", "acad.txt")."""
    root = resources.files(__package__)
    target = root
    for part in parts:
        target = target.joinpath(part)
    return Path(str(target))
