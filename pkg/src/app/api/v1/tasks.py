from typing import Annotated, Any

from arq.connections import ArqRedis
from arq.jobs import Job as ArqJob
from fastapi import APIRouter, Depends

from ...api.dependencies import get_queue_pool
from ...core.exceptions.http_exceptions import DuplicateValueException
from ...schemas.job import Job, VerifyJobCreate

router = APIRouter(prefix="/tasks", tags=["tasks"])


@router.post("/verify", response_model=Job, status_code=201)
async def create_verify_task(
    job: VerifyJobCreate, pool: Annotated[ArqRedis, Depends(get_queue_pool)]
) -> dict[str, str]:
    """Enqueue an oracle verification of one graph.

    Parameters
    ----------
    job: VerifyJobCreate
        The graph, the number of random weight vectors and the sampler seed.

    Returns
    -------
    dict[str, str]
        A dictionary containing the ID of the created task.
    """
    queued = await pool.enqueue_job("verify_instance", job.graph.model_dump(), job.samples, job.seed)
    if queued is None:
        raise DuplicateValueException("A job with this id is already queued.")
    return {"id": queued.job_id}


@router.get("/task/{task_id}")
async def get_task(task_id: str, pool: Annotated[ArqRedis, Depends(get_queue_pool)]) -> dict[str, Any] | None:
    """Get information about a specific background task.

    Parameters
    ----------
    task_id: str
        The ID of the task.

    Returns
    -------
    Optional[dict[str, Any]]
        A dictionary containing information about the task if found, or None otherwise.
    """
    job = ArqJob(task_id, pool)
    job_info = await job.info()
    if job_info is None:
        return None
    return vars(job_info)
