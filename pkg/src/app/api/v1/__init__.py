from fastapi import APIRouter

from .formulations import router as formulations_router
from .health import router as health_router
from .solve import router as solve_router
from .tasks import router as tasks_router

router = APIRouter(prefix="/v1")
router.include_router(health_router)
router.include_router(solve_router)
router.include_router(formulations_router)
router.include_router(tasks_router)
