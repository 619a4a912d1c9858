"""Caching for convex hull computations

Faces of the same polytope are hulled over and over by the pulling
triangulation and the fan comparisons, so hull results are memoized on the
canonical point tuple.

Features:
- In-memory cache with LRU eviction
- Hit/miss counters
- Cache key generation from point sets
- Global cache instance that can be swapped out (e.g. for tests)
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from loguru import logger

DEFAULT_CACHE_SIZE = 4096

_MISSING = object()


@dataclass
class CacheStats:
    """Hit/miss counters"""

    hits: int = 0
    misses: int = 0

    @property
    def requests(self) -> int:
        return self.hits + self.misses


class MemoryCache:
    """In-memory cache with LRU eviction

    Uses an ordered dict; a hit moves the entry to the back, a full cache
    drops the front entry. A lock guards every access, so worker
    threads can share one instance.
    """

    def __init__(self, max_size: int = DEFAULT_CACHE_SIZE):
        """Initialize memory cache

        Args:
            max_size: Maximum number of entries to store
        """
        if max_size < 1:
            raise ValueError(f"max_size must be positive, got {max_size}")
        self._cache: OrderedDict[str, Any] = OrderedDict()
        self._max_size = max_size
        self.stats = CacheStats()
        self._lock = threading.Lock()

    def get(self, key: str) -> Any | None:
        """Get value from cache

        Args:
            key: Cache key

        Returns:
            Cached value or None if not found
        """
        with self._lock:
            value = self._cache.get(key, _MISSING)
            if value is _MISSING:
                self.stats.misses += 1
                return None
            self._cache.move_to_end(key)
            self.stats.hits += 1
        logger.debug(f"Cache hit: {key[:50]}...")
        return value

    def set(self, key: str, value: Any) -> None:
        """Set value in cache

        Args:
            key: Cache key
            value: Value to cache
        """
        evicted = None
        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
            elif len(self._cache) >= self._max_size:
                evicted, _ = self._cache.popitem(last=False)
            self._cache[key] = value
        if evicted is not None:
            logger.debug(f"Cache full, evicting: {evicted[:50]}...")

    def clear(self) -> None:
        """Clear all cache entries"""
        with self._lock:
            self._cache.clear()
            self.stats = CacheStats()
        logger.debug("Cache cleared")

    def size(self) -> int:
        """Get current cache size"""
        with self._lock:
            return len(self._cache)


# Global cache instance
_cache_instance: MemoryCache | None = None


def get_cache() -> MemoryCache:
    """Get global cache instance

    Returns:
        Global cache instance
    """
    global _cache_instance
    if _cache_instance is None:
        _cache_instance = MemoryCache()
    return _cache_instance


def set_cache(cache: MemoryCache) -> None:
    """Set global cache instance

    Args:
        cache: Cache instance to use globally
    """
    global _cache_instance
    _cache_instance = cache
    logger.debug(f"Cache backend set to: {cache.__class__.__name__} (max_size={cache._max_size})")


def generate_cache_key(kind: str, points: Iterable[Iterable[Any]]) -> str:
    """Generate cache key from an operation name and a point set

    Points are sorted, so the key does not depend on input order.

    Args:
        kind: Operation name
        points: Point coordinates (ints or Fractions)

    Returns:
        Cache key string
    """
    canonical = sorted(tuple(str(c) for c in p) for p in points)
    return f"{kind}:{canonical}"


def clear_cache() -> None:
    """Clear all cached entries"""
    get_cache().clear()
