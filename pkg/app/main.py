from contextlib import asynccontextmanager

import numpy as np
from fastapi import FastAPI

from app.config import settings
from app.db import init_db
from app.utils.logging import configure_logging
from app.utils.preflight import collect_preflight_warnings, log_preflight_warnings
from app.web.routes import router as web_router


@asynccontextmanager
async def lifespan(_: FastAPI):
    configure_logging(settings.log_path)
    log_preflight_warnings()
    init_db()
    yield


app = FastAPI(title=f"{settings.app_name} API", lifespan=lifespan)
app.include_router(web_router)


@app.get("/health")
def health_check() -> dict[str, object]:
    return {
        "status": "ok",
        "simulator": {
            "numpy": np.__version__,
            "max_qubits": settings.max_qubits,
            "workers": settings.similarity_workers,
        },
        "warnings": collect_preflight_warnings(),
    }
