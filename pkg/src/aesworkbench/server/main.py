"""Report service for algebra eigenstates, using FastAPI.

This module defines the application's server and its components.

"""

from fastapi import FastAPI
from fastapi import Request
from fastapi.responses import HTMLResponse
from fastapi.responses import RedirectResponse

from aesworkbench.cli.commands import FAMILIES
from aesworkbench.cli.verification import SUITES
from aesworkbench.server.dependencies import templates
from aesworkbench.server.routers import states
from aesworkbench.server.routers import verification

app = FastAPI(title="aesworkbench")

app.include_router(states.router)
app.include_router(verification.router)


@app.get("/", response_class=RedirectResponse)
async def get_index_page(request: Request) -> RedirectResponse:
    """Index page for the front end of the application.

    Args:
        request (Request): Request to be passed in context.

    Returns:
        RedirectResponse: Redirection to the "families" page.
    """
    return RedirectResponse("/families")


@app.get("/families", response_class=HTMLResponse)
async def get_families_page(request: Request) -> HTMLResponse:
    """Page listing the state families and verification suites.

    Args:
        request (Request): Request to be passed in context.

    Returns:
        HTMLResponse: Page to be served.
    """
    return templates.TemplateResponse(
        request,
        "families.html",
        {"families": list(FAMILIES.values()), "suites": [*SUITES, "all"]},
    )
