from __future__ import annotations

import threading
from typing import Any, Callable, Dict, Hashable


class CodeStore:
    """Process-wide cache of immutable construction results (class tables,
    run-family tables). Entries are built once and shared between threads."""

    def __init__(self) -> None:
        self._store: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    def get(self, key: Hashable, build: Callable[[], Any]) -> Any:
        with self._lock:
            if key in self._store:
                return self._store[key]
        value = build()
        with self._lock:
            return self._store.setdefault(key, value)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._store

    def __len__(self) -> int:
        return len(self._store)

    def clear(self) -> None:
        with self._lock:
            self._store.clear()


code_store = CodeStore()
