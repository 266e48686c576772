"""Routes which build states and return their records."""

import logging
from dataclasses import replace
from typing import Annotated
from typing import Any

from fastapi import APIRouter
from fastapi import Depends
from fastapi import HTTPException
from fastapi import Request

from aesworkbench.cli.commands import build_state
from aesworkbench.cli.commands import state_record
from aesworkbench.config import RunConfig
from aesworkbench.errors import AesError
from aesworkbench.errors import ConfigError
from aesworkbench.errors import InvalidSpec
from aesworkbench.server.dependencies import get_config

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/state/{family}")
def get_state(
    request: Request,
    family: str,
    config: Annotated[RunConfig, Depends(get_config)],
    dim: int | None = None,
) -> dict[str, Any]:
    """Build a family member from query parameters and return its record.

    Args:
        request (Request): Request holding the family parameters as query strings.
        family (str): Family name.
        config (Annotated[RunConfig, Depends): Configuration dependency.
        dim (int | None, optional): Fock truncation overriding the configuration.
        Defaults to None.

    Raises:
        HTTPException: 422 on invalid parameters, 409 when the state cannot be
        built or converged.

    Returns:
        dict[str, Any]: Record {spec, derived, coefficients, moments, residuals,
        config}.
    """
    params = {k: v for k, v in request.query_params.items() if k != "dim"}
    try:
        if dim is not None:
            config = replace(config, truncation=dim)
        bundle = build_state(family, params, config)
        return state_record(bundle, config)
    except (InvalidSpec, ConfigError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except AesError as exc:
        logger.warning("State %s %s failed: %s", family, params, exc)
        detail = {"error": type(exc).__name__, "message": str(exc)}
        tail = getattr(exc, "tail_mass", None)
        if tail is not None:
            detail["tail_mass"] = tail
        raise HTTPException(status_code=409, detail=detail) from exc
