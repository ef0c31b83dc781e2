"""FastAPI routes exposing the command verbs over HTTP."""

import asyncio
from typing import Optional

from fastapi import APIRouter, HTTPException, Query, Request

from ..algebra.errors import InputError
from ..cli import VERBS, run_command
from ..instances.fileformat import emit_instance, parse_instance
from ..instances.generators import generate
from ..utils.logger import logger
from .models import GeneratedInstance, RunResult


router = APIRouter(prefix="/api/v1")


@router.post("/run/{verb}")
async def run_verb(
    verb: str,
    request: Request,
    max_n: Optional[int] = Query(None, ge=1),
) -> RunResult:
    """
    Run a verb on an instance sent as the plain-text request body.

    Args:
        verb: Command verb
        request: Request whose body is the instance file (ignored by certify-all)
        max_n: Largest corpus order for certify-all

    Returns:
        RunResult with the same report and exit code as the command line

    Raises:
        HTTPException: 404 for an unknown verb
    """
    if verb not in VERBS:
        raise HTTPException(status_code=404, detail=f"unknown verb {verb!r}")

    instance = None
    if verb != "certify-all":
        body = (await request.body()).decode("utf-8", errors="replace")
        try:
            instance = parse_instance(body)
        except InputError as e:
            logger.warning(f"Rejected instance: {e}", extra={"verb": verb})
            return RunResult(verb=verb, exit_code=2, report=f"ERROR {type(e).__name__}: {e}\n")

    # certify-all starts its own event loop, so every verb runs off the server loop
    text, code = await asyncio.to_thread(run_command, verb, instance, max_n)
    return RunResult(verb=verb, exit_code=code, report=text)


@router.get("/generate/{family}")
async def generate_instance(
    family: str,
    param: int = Query(0),
    index: int = Query(0, ge=0),
) -> GeneratedInstance:
    """
    Produce a builtin family member as instance file text.

    Raises:
        HTTPException: 400 when the family or its parameters are out of range
    """
    try:
        instance = generate(family, param, index)
    except InputError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return GeneratedInstance(
        family=family,
        param=param,
        index=index,
        order=instance.order,
        text=emit_instance(instance),
    )
