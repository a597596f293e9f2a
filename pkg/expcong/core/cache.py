"""
Factorization Cache Module using cachetools

Factorizations of the same input integers are requested over and over while
classifying pairs, building condition sets and checking certificates. This
module keeps them in a bounded LRU cache with basic statistics.

Version: 1.0.0
"""
from typing import Any, Dict, Optional
from cachetools import LRUCache
from ..config import FACTOR_CACHE_SIZE
from ..core.logger import get_logger

logger = get_logger(__name__)


class FactorizationCache:
    """Simple factorization cache using cachetools LRUCache"""

    def __init__(self, max_size: int = None):
        """
        Initialize cache with a size limit

        Args:
            max_size: Maximum number of entries before LRU eviction (default from config)
        """
        self._max_size = max_size if max_size is not None else FACTOR_CACHE_SIZE
        self._cache = LRUCache(maxsize=self._max_size)

        self._hits = 0
        self._misses = 0

        logger.debug(f"Factorization cache initialized: Max Size={self._max_size}")

    def get(self, n: int) -> Optional[Any]:
        """Get a cached factorization of |n|"""
        try:
            data = self._cache[abs(n)]
            self._hits += 1
            return data
        except KeyError:
            self._misses += 1
            return None

    def set(self, n: int, data: Any):
        """Cache the factorization of |n|"""
        self._cache[abs(n)] = data

    def get_stats(self) -> Dict[str, Any]:
        """Get basic cache statistics"""
        total_requests = self._hits + self._misses
        hit_ratio = (self._hits / total_requests * 100) if total_requests > 0 else 0

        return {
            "hits": self._hits,
            "misses": self._misses,
            "total_requests": total_requests,
            "hit_ratio": round(hit_ratio, 2),
            "current_size": len(self._cache),
            "max_size": self._max_size,
        }

    def clear(self):
        """Clear all cache entries"""
        size_before = len(self._cache)
        self._cache.clear()
        self._hits = 0
        self._misses = 0
        logger.debug(f"Factorization cache cleared: {size_before} entries removed")


# Global cache instance
factor_cache = FactorizationCache()
