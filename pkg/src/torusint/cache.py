"""Append-only JSONL result cache.

Single-writer, multi-reader: records are appended one JSON object per
line and never rewritten, so concurrent readers see a consistent prefix.
Keys are strings assembled from the curve content hash plus either a
relation vector (factoring sweeps) or a lattice HNF (intersections).
"""

from __future__ import annotations

import json
import os


def vector_key(curve_hash: str, vector) -> str:
    return f"{curve_hash}|v|{','.join(str(x) for x in vector)}"


def lattice_key(curve_hash: str, hnf_rows) -> str:
    rows = ";".join(",".join(str(x) for x in row) for row in hnf_rows)
    return f"{curve_hash}|L|{rows}"


class ResultCache:
    """Dict-like store backed by an append-only ledger file."""

    def __init__(self, path):
        self.path = str(path)
        self._data: dict = {}
        self._load()

    def _load(self):
        if not os.path.exists(self.path):
            return
        with open(self.path) as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue  # torn trailing write; ignore the partial line
                self._data[rec["key"]] = rec["value"]

    def get(self, key, default=None):
        return self._data.get(key, default)

    def __contains__(self, key):
        return key in self._data

    def put(self, key, value):
        if key in self._data:
            return
        self._data[key] = value
        os.makedirs(os.path.dirname(os.path.abspath(self.path)), exist_ok=True)
        prefix = ""
        if os.path.exists(self.path) and os.path.getsize(self.path) > 0:
            with open(self.path, "rb") as f:
                f.seek(-1, os.SEEK_END)
                if f.read(1) != b"\n":
                    # a previous writer died mid-line; start a fresh record
                    prefix = "\n"
        with open(self.path, "a") as f:
            f.write(prefix + json.dumps({"key": key, "value": value}, sort_keys=True) + "\n")

    def __len__(self):
        return len(self._data)


class FactorCache:
    """Adapter giving the factoring sweep a vector-keyed view of a store.

    Values are tuples of irreducible-factor coefficient tuples; stored as
    JSON lists."""

    def __init__(self, store, curve_hash: str):
        self.store = store
        self.curve_hash = curve_hash

    def get(self, vector):
        v = self.store.get(vector_key(self.curve_hash, vector))
        if v is None:
            return None
        return tuple(tuple(c) for c in v)

    def put(self, vector, factors):
        self.store.put(
            vector_key(self.curve_hash, vector), [list(c) for c in factors]
        )


class NullCache:
    """Cache interface that stores nothing (--no-cache)."""

    def get(self, key, default=None):
        return default

    def __contains__(self, key):
        return False

    def put(self, key, value):
        pass

    def __len__(self):
        return 0
