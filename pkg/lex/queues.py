from __future__ import annotations

import asyncio
import logging
import time
import uuid
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

LOGGER = logging.getLogger(__name__)


class JobStatus:
    QUEUED = "queued"
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


@dataclass(slots=True)
class Job:
    name: str
    func: Callable[[], Any]
    job_id: str = field(default_factory=lambda: uuid.uuid4().hex)
    status: str = JobStatus.QUEUED
    result: Any = None
    last_error: str | None = None
    elapsed: float = 0.0


class CheckQueue:
    """Worker pool that runs blocking check functions off the event loop."""

    def __init__(self, workers: int) -> None:
        self.workers = max(1, workers)
        self.queue: asyncio.Queue[Job] = asyncio.Queue()
        self.jobs: dict[str, Job] = {}
        self._workers: list[asyncio.Task[None]] = []
        self._stop = asyncio.Event()

    def start(self) -> None:
        for _ in range(self.workers):
            task = asyncio.create_task(self._worker())
            self._workers.append(task)

    async def stop(self) -> None:
        self._stop.set()
        for task in self._workers:
            task.cancel()
        await asyncio.gather(*self._workers, return_exceptions=True)

    async def enqueue(self, job: Job) -> None:
        self.jobs[job.job_id] = job
        await self.queue.put(job)
        LOGGER.debug("Enqueued job %s (%s)", job.job_id, job.name)

    def get_stats(self) -> dict[str, int]:
        stats = {state: 0 for state in [
            JobStatus.QUEUED,
            JobStatus.RUNNING,
            JobStatus.DONE,
            JobStatus.FAILED,
        ]}
        for job in self.jobs.values():
            stats[job.status] = stats.get(job.status, 0) + 1
        stats["total"] = len(self.jobs)
        return stats

    async def _worker(self) -> None:
        while not self._stop.is_set():
            try:
                job = await self.queue.get()
            except asyncio.CancelledError:
                break
            try:
                await self._process_job(job)
            except Exception as exc:  # noqa: BLE001
                LOGGER.exception("Job %s (%s) failed: %s", job.job_id, job.name, exc)
                job.status = JobStatus.FAILED
                job.last_error = f"{type(exc).__name__}: {exc}"
            finally:
                self.queue.task_done()

    async def _process_job(self, job: Job) -> None:
        job.status = JobStatus.RUNNING
        started = time.perf_counter()
        job.result = await asyncio.to_thread(job.func)
        job.elapsed = time.perf_counter() - started
        job.status = JobStatus.DONE
        LOGGER.info("Job %s finished in %.2fs", job.name, job.elapsed)


async def _run_all(jobs: Sequence[Job], workers: int) -> list[Job]:
    queue = CheckQueue(workers)
    queue.start()
    try:
        for job in jobs:
            await queue.enqueue(job)
        await queue.queue.join()
        LOGGER.info("Queue drained: %s", queue.get_stats())
    finally:
        await queue.stop()
    return list(jobs)


def run_jobs(jobs: Sequence[Job], workers: int) -> list[Job]:
    """Run every job and return them in submission order."""
    return asyncio.run(_run_all(jobs, workers))
