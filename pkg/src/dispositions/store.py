"""File-backed stores for profiles and sessions.

One JSON document per profile or session.  Writes go to a temporary file in
the same directory and are renamed into place, so readers never see a torn
document.  Mutations are serialized per key: ``update`` applies its function
under an exclusive per-key lock, which forbids last-write-wins races between
concurrent submissions for the same agent.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Callable, Optional, Union
from urllib.parse import quote, unquote

from .profile import Profile, deserialize_profile, empty_profile, serialize_profile
from .session import Session, session_document, session_from_document


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class _FileStore:
    """Directory of JSON documents with per-key write locks."""

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._registry = threading.Lock()

    def _lock(self, key: str) -> threading.Lock:
        with self._registry:
            if key not in self._locks:
                self._locks[key] = threading.Lock()
            return self._locks[key]

    def _path(self, key: str) -> Path:
        return self.root / (quote(key, safe="") + ".json")

    def _read(self, key: str) -> Optional[bytes]:
        try:
            return self._path(key).read_bytes()
        except FileNotFoundError:
            return None

    def keys(self) -> list[str]:
        return sorted(
            unquote(path.name[: -len(".json")])
            for path in self.root.glob("*.json")
        )


class ProfileStore(_FileStore):
    def load(self, agent: str) -> Optional[Profile]:
        data = self._read(agent)
        if data is None:
            return None
        return deserialize_profile(data)

    def save(self, profile: Profile) -> None:
        with self._lock(profile.agent):
            _atomic_write(self._path(profile.agent), serialize_profile(profile))

    def update(self, agent: str, fn: Callable[[Profile], Profile]) -> Profile:
        """Apply ``fn`` to the stored profile (an empty one if absent) and
        persist the result, all under the agent's exclusive lock."""
        with self._lock(agent):
            data = self._read(agent)
            profile = empty_profile(agent) if data is None else deserialize_profile(data)
            updated = fn(profile)
            if updated.agent != agent:
                raise ValueError(
                    f"update for {agent!r} produced a profile for {updated.agent!r}"
                )
            _atomic_write(self._path(agent), serialize_profile(updated))
            return updated

    def agents(self) -> list[str]:
        return self.keys()


class SessionStore(_FileStore):
    def load(self, session_id: str) -> Optional[Session]:
        data = self._read(session_id)
        if data is None:
            return None
        return session_from_document(json.loads(data.decode("utf-8")))

    def save(self, session: Session) -> None:
        with self._lock(session.id):
            _atomic_write(
                self._path(session.id),
                json.dumps(session_document(session), indent=2).encode("utf-8"),
            )

    def update(self, session_id: str, fn: Callable[[Session], Session]) -> Session:
        """Apply ``fn`` to the stored session under its exclusive lock.

        Raises KeyError when the session does not exist; sessions are created
        by ``save``, never implicitly.
        """
        with self._lock(session_id):
            data = self._read(session_id)
            if data is None:
                raise KeyError(session_id)
            session = session_from_document(json.loads(data.decode("utf-8")))
            updated = fn(session)
            if updated.id != session_id:
                raise ValueError(
                    f"update for {session_id!r} produced session {updated.id!r}"
                )
            _atomic_write(
                self._path(session_id),
                json.dumps(session_document(updated), indent=2).encode("utf-8"),
            )
            return updated

    def sessions(self) -> list[str]:
        return self.keys()
