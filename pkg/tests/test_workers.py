import pytest
import asyncio
import threading
import time
from niemytzki_lab.core.workers import THREADS_ENV, map_ordered, run_jobs, thread_limit

@pytest.mark.asyncio
async def test_run_jobs_order():
    """Test results come back in input order whatever the finishing order"""
    def slow_echo(x):
        time.sleep(0.01 * (5 - x))  # Earlier items finish later
        return f"Result: {x}"

    results = await run_jobs(slow_echo, range(5), limit=5)

    assert results == [f"Result: {i}" for i in range(5)]

@pytest.mark.asyncio
async def test_run_jobs_limit():
    """Test the semaphore caps the number of running jobs"""
    lock = threading.Lock()
    running = {"now": 0, "peak": 0}

    def job(x):
        with lock:
            running["now"] += 1
            running["peak"] = max(running["peak"], running["now"])
        time.sleep(0.02)
        with lock:
            running["now"] -= 1
        return x

    results = await run_jobs(job, range(8), limit=2)

    assert results == list(range(8))
    assert running["peak"] <= 2

@pytest.mark.asyncio
async def test_map_ordered_inside_loop():
    """Test map_ordered runs sequentially when an event loop is running"""
    seen = []

    def record(x):
        seen.append(threading.current_thread().name)
        return x * 2

    assert map_ordered(record, [1, 2, 3], limit=4) == [2, 4, 6]
    assert set(seen) == {threading.current_thread().name}

def test_map_ordered_threads():
    """Test map_ordered outside a loop matches the sequential result"""
    items = list(range(20))
    assert map_ordered(lambda x: x * x, items, limit=4) == [x * x for x in items]
    assert map_ordered(lambda x: x * x, items, limit=1) == [x * x for x in items]
    assert map_ordered(lambda x: x, []) == []

def test_thread_limit_env(monkeypatch):
    """Test the thread cap is read from the environment"""
    monkeypatch.setenv(THREADS_ENV, "3")
    assert thread_limit() == 3

    # Non-positive values are clamped to one worker
    monkeypatch.setenv(THREADS_ENV, "0")
    assert thread_limit() == 1

    # Garbage falls back to the CPU count
    monkeypatch.setenv(THREADS_ENV, "many")
    assert thread_limit() >= 1

    monkeypatch.delenv(THREADS_ENV)
    assert thread_limit() >= 1
