"""In-memory cache for per-arity bases, matrices and other immutable results."""

import functools
import threading
from typing import Any, Callable, Optional, TypeVar

F = TypeVar("F", bound=Callable[..., Any])

# Values are immutable once stored, so there is no expiry
_cache: dict[str, Any] = {}
_lock = threading.Lock()
_MISSING = object()


def get_cache(key: str) -> Optional[Any]:
    """Get value from cache, or None when absent."""
    return _cache.get(key)


def set_cache(key: str, value: Any) -> None:
    """Store a value. The first writer wins so concurrent builders agree."""
    with _lock:
        _cache.setdefault(key, value)


def clear_cache(pattern: Optional[str] = None) -> None:
    """Clear cache by pattern or all if pattern is None."""
    with _lock:
        if pattern is None:
            _cache.clear()
            return

        keys_to_delete = [key for key in _cache.keys() if pattern in key]
        for key in keys_to_delete:
            del _cache[key]


def make_cache_key(prefix: str, *args, **kwargs) -> str:
    """Generate cache key from prefix and parameters."""
    parts = [prefix]
    parts.extend(repr(arg) for arg in args)
    for key, value in sorted(kwargs.items()):
        parts.append(f"{key}:{value!r}")
    return "|".join(parts)


def memoize(prefix: str) -> Callable[[F], F]:
    """Cache a pure function's result under ``make_cache_key(prefix, *args, **kwargs)``."""

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            key = make_cache_key(prefix, *args, **kwargs)
            value = _cache.get(key, _MISSING)
            if value is _MISSING:
                value = func(*args, **kwargs)
                set_cache(key, value)
                value = _cache[key]
            return value

        return wrapper  # type: ignore[return-value]

    return decorator
