import asyncio
from typing import Any

import uvloop
from arq.worker import Worker

from ...schemas.graph import GraphIn
from ...verification import verify_graph
from ..logger import logging

asyncio.set_event_loop_policy(uvloop.EventLoopPolicy())

logger = logging.getLogger(__name__)


# -------- background tasks --------
async def verify_instance(ctx: Worker, graph: dict[str, Any], samples: int, seed: int) -> dict[str, Any]:
    """Oracle comparisons for one graph, run off the request path."""
    g = GraphIn.model_validate(graph).to_graph()
    logger.info(f"verifying a {g.n}-node graph over {samples} samples with seed {seed}")
    report = await asyncio.to_thread(verify_graph, g, samples, seed)
    return report.model_dump() | {"ok": report.ok}


# -------- base functions --------
async def startup(ctx: Worker) -> None:
    logger.info("Worker Started")


async def shutdown(ctx: Worker) -> None:
    logger.info("Worker end")
