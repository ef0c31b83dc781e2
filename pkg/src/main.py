"""Report service entry point."""

import signal
import sys
from contextlib import asynccontextmanager

from fastapi import FastAPI
import uvicorn

from . import __version__
from .api.models import ServiceInfo
from .api.routes import router
from .cli import VERBS
from .utils.config import settings
from .utils.logger import logger


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log service startup and shutdown."""
    logger.info(f"Starting invsemi report service {__version__}")
    logger.info(f"Enumeration bound: {settings.max_enumeration_size}")
    yield
    logger.info("invsemi report service stopped")


app = FastAPI(
    title="invsemi",
    description="Partial actions of finite inverse semigroups and their semidirect products",
    version=__version__,
    lifespan=lifespan,
)

app.include_router(router)


@app.get("/")
async def root() -> ServiceInfo:
    """Root endpoint."""
    return ServiceInfo(name="invsemi", version=__version__, verbs=list(VERBS))


@app.get("/health")
async def health():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "witness_search": "enabled" if settings.witness_search else "disabled",
    }


def handle_signal(signum, frame):
    """Handle shutdown signals."""
    logger.info(f"Received signal {signum}, shutting down...")
    sys.exit(0)


def main():
    """Main entry point."""
    signal.signal(signal.SIGINT, handle_signal)
    signal.signal(signal.SIGTERM, handle_signal)

    uvicorn.run(
        app,
        host=settings.api_host,
        port=settings.api_port,
        log_level=settings.log_level.lower(),
    )


if __name__ == "__main__":
    main()
