"""On-disk cache of intermediate X_k series, one JSON file per (k, caps)."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from . import ENGINE_VERSION
from .series import MultiSeries, SeriesError

log = logging.getLogger(__name__)

ENV_VAR = "CHI_CACHE_DIR"


def cache_name(k: int, cap_q: int, cap_qi: int) -> str:
    return f"X_g1_n{k}_q{cap_q}_qi{cap_qi}.json"


class SeriesCache:
    def __init__(self, root, version: str = ENGINE_VERSION):
        self.root = Path(root)
        self.version = version

    @classmethod
    def from_env(cls, explicit=None) -> "SeriesCache | None":
        root = explicit or os.environ.get(ENV_VAR)
        return cls(root) if root else None

    def path(self, k: int, cap_q: int, cap_qi: int) -> Path:
        return self.root / cache_name(k, cap_q, cap_qi)

    def load(self, k: int, cap_q: int, cap_qi: int) -> MultiSeries | None:
        p = self.path(k, cap_q, cap_qi)
        if not p.exists():
            return None
        try:
            data = json.loads(p.read_text())
            if data.get("engine_version") != self.version:
                log.info("ignoring %s: engine version %s", p.name, data.get("engine_version"))
                return None
            s = MultiSeries.from_dict(data)
        except (ValueError, KeyError, SeriesError) as exc:
            log.warning("ignoring unreadable cache file %s: %s", p, exc)
            return None
        if s.caps != (cap_q,) + (cap_qi,) * k:
            return None
        return s

    def store(self, k: int, cap_q: int, cap_qi: int, series: MultiSeries) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        data = {"engine_version": self.version, **series.to_dict()}
        p = self.path(k, cap_q, cap_qi)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, separators=(",", ":")))
        tmp.replace(p)
        return p
