from dataclasses import dataclass, field
from typing import Any

from tests.conftest import fake


@dataclass
class FakeJob:
    job_id: str


@dataclass
class FakePool:
    """Stands in for ``ArqRedis``: records enqueued jobs instead of talking to redis."""

    jobs: list[tuple[str, tuple[Any, ...]]] = field(default_factory=list)
    closed: bool = False

    async def enqueue_job(self, function: str, *args: Any, **kwargs: Any) -> FakeJob:
        self.jobs.append((function, args))
        return FakeJob(job_id=fake.hexify("^" * 32))

    async def aclose(self) -> None:
        self.closed = True


@dataclass
class FakeJobDef:
    function: str
    args: tuple[Any, ...]
    job_try: int = 1


def job_info(function: str = "verify_instance", *args: Any) -> FakeJobDef:
    return FakeJobDef(function=function, args=args)
