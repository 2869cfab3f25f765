"""Service configuration: a flat TOML file naming artifact paths and the
server settings, overridable through ACADAID_* environment variables."""

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

ENV_PREFIX = "ACADAID_"

_PATH_KEYS = (
    "resource",
    "iwi_model",
    "ranker_model",
    "embeddings",
    "freq_web",
    "freq_general",
    "freq_academic",
    "acad_ngrams",
    "nonacad_ngrams",
)
_PATH_LIST_KEYS = ("lexicons", "external_lists")


@dataclass
class ServiceConfig:
    resource: str | None = None
    iwi_model: str | None = None
    ranker_model: str | None = None
    embeddings: str | None = None
    freq_web: str | None = None
    freq_general: str | None = None
    freq_academic: str | None = None
    acad_ngrams: str | None = None
    nonacad_ngrams: str | None = None
    lexicons: list[str] = field(default_factory=list)
    external_lists: list[str] = field(default_factory=list)
    host: str = "127.0.0.1"
    port: int = 8040
    cors_origins: list[str] = field(default_factory=lambda: ["*"])


def _coerce(name: str, raw: str):
    if name == "port":
        return int(raw)
    if name in _PATH_LIST_KEYS or name == "cors_origins":
        return [part.strip() for part in raw.split(",") if part.strip()]
    return raw


def load_config(path=None, env: dict | None = None) -> ServiceConfig:
    """Read the TOML config (if given), then apply ACADAID_<KEY> overrides.

    Relative artifact paths are resolved against the config file's own
    directory, so a config can travel with its artifacts.
    """
    env = os.environ if env is None else env
    config = ServiceConfig()
    base = Path(".")
    if path is not None:
        path = Path(path)
        base = path.parent
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        known = {f.name for f in fields(ServiceConfig)}
        for key, value in data.items():
            if key not in known:
                raise ValueError(f"{path}: unknown config key {key!r}")
            setattr(config, key, value)
    for f in fields(ServiceConfig):
        raw = env.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            setattr(config, f.name, _coerce(f.name, raw))
    for key in _PATH_KEYS:
        value = getattr(config, key)
        if value is not None:
            setattr(config, key, str((base / value).resolve()) if not Path(value).is_absolute() else value)
    for key in _PATH_LIST_KEYS:
        value = getattr(config, key)
        setattr(
            config,
            key,
            [str((base / v).resolve()) if not Path(v).is_absolute() else v for v in value],
        )
    return config
