"""Subgroup-lattice cache keyed by a content hash of the Cayley table.

Relabeled but equal tables hash identically because the key covers exactly
(order, table, identity); isomorphic groups with different tables hash
differently, which is documented behavior (no isomorphism testing).  Writes
are atomic (temp file + rename) and guarded by an advisory lock so that
concurrent CLI invocations do not corrupt entries.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
from pathlib import Path
from typing import Optional

from .groups import FiniteGroup, Subgroup, all_subgroups

ENV_CACHE_DIR = "BLGROUPS_CACHE_DIR"


def cache_key(G: FiniteGroup) -> str:
    payload = json.dumps(
        {"order": G.order, "table": [list(r) for r in G.table], "identity": G.identity},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "blgroups"


class SubgroupCache:
    def __init__(self, directory: Optional[Path] = None, enabled: bool = True):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.enabled = enabled
        self.last_hit = False

    def _path(self, digest: str) -> Path:
        return self.directory / f"{digest}.json"

    def subgroups(self, G: FiniteGroup, order_cap: int = 4096) -> list[Subgroup]:
        """Cached subgroup lattice of G, computing and storing on a miss."""
        self.last_hit = False
        if not self.enabled:
            return all_subgroups(G, order_cap)
        digest = cache_key(G)
        path = self._path(digest)
        if path.exists():
            with open(path) as fh:
                fcntl.flock(fh, fcntl.LOCK_SH)
                data = json.load(fh)
                fcntl.flock(fh, fcntl.LOCK_UN)
            if data.get("order") == G.order:
                self.last_hit = True
                return [Subgroup(G, tuple(m)) for m in data["subgroups"]]
        subs = all_subgroups(G, order_cap)
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {
            "order": G.order,
            "subgroups": [list(s.members) for s in subs],
        }
        tmp = path.with_suffix(".tmp")
        lock_path = self.directory / ".lock"
        with open(lock_path, "w") as lock:
            fcntl.flock(lock, fcntl.LOCK_EX)
            try:
                with open(tmp, "w") as fh:
                    json.dump(payload, fh, sort_keys=True)
                os.replace(tmp, path)
            finally:
                fcntl.flock(lock, fcntl.LOCK_UN)
        return subs
