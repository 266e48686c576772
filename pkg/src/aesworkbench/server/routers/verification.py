"""Routes which run the verification suites."""

from typing import Annotated
from typing import Any

from fastapi import APIRouter
from fastapi import Depends
from fastapi import HTTPException

from aesworkbench.cli.verification import SUITES
from aesworkbench.cli.verification import run_suite
from aesworkbench.cli.verification import suite_record
from aesworkbench.config import RunConfig
from aesworkbench.server.dependencies import get_config

router = APIRouter()


@router.get("/verify/{suite}")
def get_verification(
    suite: str, config: Annotated[RunConfig, Depends(get_config)]
) -> dict[str, Any]:
    """Run a verification suite.

    Args:
        suite (str): Suite name, or "all".
        config (Annotated[RunConfig, Depends): Configuration dependency.

    Raises:
        HTTPException: 404 if the suite is unknown.

    Returns:
        dict[str, Any]: Pass flag and every check of the suite.
    """
    if suite != "all" and suite not in SUITES:
        raise HTTPException(status_code=404, detail=f"Unknown suite {suite!r}")
    return suite_record(run_suite(suite, config), config)
