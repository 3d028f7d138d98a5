"""Service configuration.

A JSON file, all keys optional except ``corpora``::

    {
      "listen": "127.0.0.1:8423",
      "corpora": ["fixtures/demo-corpus.json"],
      "storage_dir": "var/storage",
      "soundness": {"low_max": 2, "high_min": 4,
                    "neutral_policy": "indeterminate", "combinator": "all"},
      "labels": {"legality": {"negative": "lawless"}},
      "randomize_order": false,
      "ui_dir": "frontend/dist"
    }

Relative paths are resolved against the config file's directory.  The
environment variables DISPO_LISTEN and DISPO_STORAGE_DIR override the file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from .elicitation import PoleLabelTable
from .soundness import DEFAULT_CONFIG, SoundnessConfig

ENV_LISTEN = "DISPO_LISTEN"
ENV_STORAGE_DIR = "DISPO_STORAGE_DIR"


class ConfigError(ValueError):
    """The configuration file is unusable; the message names the key."""


@dataclass(frozen=True)
class ServiceConfig:
    corpora: tuple[Path, ...]
    storage_dir: Path
    host: str = "127.0.0.1"
    port: int = 8423
    soundness: SoundnessConfig = DEFAULT_CONFIG
    labels: PoleLabelTable = field(default_factory=PoleLabelTable.default)
    randomize_order: bool = False
    ui_dir: Optional[Path] = None

    def __post_init__(self) -> None:
        if not self.corpora:
            raise ConfigError("at least one corpus path is required")
        if not 0 < self.port < 65536:
            raise ConfigError(f"port {self.port} out of range")


def _parse_listen(value: str) -> tuple[str, int]:
    host, sep, port = value.rpartition(":")
    if not sep or not host:
        raise ConfigError(f"listen must be 'host:port', got {value!r}")
    try:
        return host, int(port)
    except ValueError:
        raise ConfigError(f"listen port must be an integer, got {port!r}") from None


def load_config(path: Union[str, Path], env: Optional[Mapping[str, str]] = None) -> ServiceConfig:
    """Read and check a configuration file.

    Corpus files must exist; the storage directory is created when missing.
    """
    if env is None:
        env = os.environ
    path = Path(path)
    try:
        doc = json.loads(path.read_text("utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise ConfigError("config must be a JSON object")
    known = {
        "listen",
        "corpora",
        "corpus",
        "storage_dir",
        "soundness",
        "labels",
        "randomize_order",
        "ui_dir",
    }
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

    base = path.resolve().parent

    def resolve(raw: Any, key: str) -> Path:
        if not isinstance(raw, str) or not raw:
            raise ConfigError(f"{key} must be a non-empty path string")
        candidate = Path(raw)
        return candidate if candidate.is_absolute() else base / candidate

    raw_corpora = doc.get("corpora", doc.get("corpus", []))
    if isinstance(raw_corpora, str):
        raw_corpora = [raw_corpora]
    if not isinstance(raw_corpora, list) or not raw_corpora:
        raise ConfigError("corpora must be a path or a non-empty list of paths")
    corpora = []
    for index, raw in enumerate(raw_corpora):
        corpus_path = resolve(raw, f"corpora[{index}]")
        if not corpus_path.is_file():
            raise ConfigError(f"corpus file not found: {corpus_path}")
        corpora.append(corpus_path)

    storage_dir = resolve(doc.get("storage_dir", "storage"), "storage_dir")
    if ENV_STORAGE_DIR in env:
        storage_dir = Path(env[ENV_STORAGE_DIR])
    try:
        storage_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"storage_dir is not writable: {exc}") from None

    listen = env.get(ENV_LISTEN, doc.get("listen", "127.0.0.1:8423"))
    if not isinstance(listen, str):
        raise ConfigError("listen must be a 'host:port' string")
    host, port = _parse_listen(listen)

    raw_soundness = doc.get("soundness", {})
    if not isinstance(raw_soundness, Mapping):
        raise ConfigError("soundness must be an object")
    try:
        soundness = SoundnessConfig.from_json(raw_soundness)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad soundness configuration: {exc}") from None

    raw_labels = doc.get("labels", {})
    if not isinstance(raw_labels, Mapping):
        raise ConfigError("labels must map dimension to {pole: label}")
    try:
        labels = PoleLabelTable.with_overrides(raw_labels)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad labels: {exc}") from None

    randomize = doc.get("randomize_order", False)
    if not isinstance(randomize, bool):
        raise ConfigError("randomize_order must be true or false")

    ui_dir = None
    if doc.get("ui_dir") is not None:
        ui_dir = resolve(doc["ui_dir"], "ui_dir")
        if not ui_dir.is_dir():
            raise ConfigError(f"ui_dir is not a directory: {ui_dir}")

    return ServiceConfig(
        corpora=tuple(corpora),
        storage_dir=storage_dir,
        host=host,
        port=port,
        soundness=soundness,
        labels=labels,
        randomize_order=randomize,
        ui_dir=ui_dir,
    )
