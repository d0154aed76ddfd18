from collections.abc import Iterator
from contextlib import contextmanager

from arq.connections import ArqRedis

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import (
    BoundViolated,
    DomainMismatch,
    NoLeafMethod,
    NotInClass,
    UnresolvedSigma,
)
from ..core.exceptions.graph_exceptions import CapExceeded, InvalidGraph
from ..core.exceptions.http_exceptions import (
    BadRequestException,
    CustomException,
    ServiceUnavailableException,
    UnprocessableEntityException,
)
from ..core.exceptions.polytope_exceptions import BlowUpGuard, MissingLeaf, SizeBoundViolated
from ..core.logger import logging
from ..core.utils import queue

logger = logging.getLogger(__name__)


def get_limits() -> Limits:
    return default_limits()


def get_queue_pool() -> ArqRedis:
    """The arq pool opened by the application lifespan.

    Raises:
        ServiceUnavailableException: If the pool is not open.
    """
    if queue.pool is None:
        raise ServiceUnavailableException("Task queue is not available.")
    return queue.pool


@contextmanager
def domain_errors() -> Iterator[None]:
    """Translate engine errors into HTTP errors.

    Raises:
        UnprocessableEntityException: If the graph is outside the decomposable class.
        BadRequestException: If the graph is malformed or exceeds a configured cap.
        CustomException: 500 if an internal bound is violated.
    """
    try:
        yield
    except NotInClass as err:
        raise UnprocessableEntityException({"message": err.message, "history": err.history}) from err
    except (NoLeafMethod, CapExceeded, BlowUpGuard, InvalidGraph) as err:
        raise BadRequestException(err.message) from err
    except (BoundViolated, SizeBoundViolated, MissingLeaf, UnresolvedSigma, DomainMismatch) as err:
        logger.error(f"internal bound violated: {err.message}")
        raise CustomException(detail=err.message) from err
