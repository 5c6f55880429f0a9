"""Content-addressed JSON cache for expensive group computations.

Entries live under ``$FLAGCALC_CACHE`` (default ``~/.cache/flagcalc``) and
are keyed by a hash of the Cartan matrix plus a query label.  Writes go
through a temporary file and ``os.replace``, so concurrent writers of the
same (deterministic) content simply overwrite each other.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .dynkin import CartanData

log = logging.getLogger(__name__)

ENV_VAR = "FLAGCALC_CACHE"


def cache_dir() -> Path:
    root = os.environ.get(ENV_VAR)
    return Path(root) if root else Path.home() / ".cache" / "flagcalc"


def cache_key(cartan: CartanData, label: str) -> str:
    return hashlib.sha256(f"{cartan.key}|{label}".encode()).hexdigest()


def load(cartan: CartanData, label: str):
    path = cache_dir() / f"{cache_key(cartan, label)}.json"
    try:
        with open(path) as fh:
            obj = json.load(fh)
        if obj.get("matrix") != cartan.key or obj.get("label") != label:
            raise ValueError("key mismatch")
        return obj["value"]
    except FileNotFoundError:
        return None
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        log.warning("ignoring corrupt cache entry %s: %s", path, exc)
        return None


def store(cartan: CartanData, label: str, value) -> None:
    d = cache_dir()
    try:
        d.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"matrix": cartan.key, "label": label, "value": value}, fh)
        os.replace(tmp, d / f"{cache_key(cartan, label)}.json")
    except OSError as exc:
        log.warning("could not write cache entry: %s", exc)


def cached(cartan: CartanData, label: str, compute, enabled: bool = True):
    if enabled:
        hit = load(cartan, label)
        if hit is not None:
            return hit
    value = compute()
    if enabled:
        store(cartan, label, value)
    return value
