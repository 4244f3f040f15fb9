"""Tests for the peak memory recorder."""

import pytest

from swallowtail.utils.memory_recorder import record_max_memory


def _allocate(n):
    data = [0.0] * n
    return len(data)


def test_record_max_memory():
    """Test memory, runtime and result are returned in order."""
    memory, runtime, result = record_max_memory(
        _allocate,
        args=[2_000_000],
        interval=0.001,
        return_func_time=True,
        return_result=True,
    )

    assert memory >= 0
    assert runtime >= 0
    assert result == 2_000_000


def test_record_max_memory_only_memory():
    """Test only the memory is returned by default."""
    memory = record_max_memory(_allocate, kwargs={"n": 10})

    assert isinstance(memory, int)


def test_record_max_memory_raises():
    """Test exceptions in the function are raised in the caller."""

    def fail():
        raise ZeroDivisionError("no inverse")

    with pytest.raises(ZeroDivisionError, match="no inverse"):
        record_max_memory(fail, interval=0.001)
