"""Tests for the in-memory result cache."""

from operad_forge.core.cache import clear_cache, get_cache, make_cache_key, memoize, set_cache


class TestCacheStore:
    """Test raw get/set/clear."""

    def setup_method(self):
        clear_cache()

    def teardown_method(self):
        clear_cache()

    def test_first_writer_wins(self):
        set_cache("k", 1)
        set_cache("k", 2)
        assert get_cache("k") == 1

    def test_clear_by_pattern(self):
        set_cache("deform.basis_D|4", "a")
        set_cache("lie.basis|4", "b")

        clear_cache("deform.")

        assert get_cache("deform.basis_D|4") is None
        assert get_cache("lie.basis|4") == "b"

    def test_make_cache_key(self):
        assert make_cache_key("p", 3, (1, 2), degree=None) == "p|3|(1, 2)|degree:None"


class TestMemoize:
    """Test the memoize decorator."""

    def setup_method(self):
        clear_cache()

    def test_calls_once_per_arguments(self):
        calls = []

        @memoize("tests.square")
        def square(n: int) -> int:
            calls.append(n)
            return n * n

        assert square(3) == 9
        assert square(3) == 9
        assert square(4) == 16
        assert calls == [3, 4]

    def test_cached_none_is_not_recomputed(self):
        calls = []

        @memoize("tests.nothing")
        def nothing() -> None:
            calls.append(1)

        nothing()
        nothing()
        assert calls == [1]
