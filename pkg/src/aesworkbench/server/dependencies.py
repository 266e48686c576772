"""Dependencies to be injected in the application routes."""

import pathlib

from fastapi.templating import Jinja2Templates

from aesworkbench.config import RunConfig
from aesworkbench.config import load_config

TEMPLATE_DIR = pathlib.Path(__file__).parent / "templates"

templates = Jinja2Templates(directory=str(TEMPLATE_DIR))


async def get_config() -> RunConfig:
    """Run configuration dependency.

    Read from AES_WORKBENCH_CONFIG when set, defaults otherwise.

    Returns:
        RunConfig: Configuration.
    """
    return load_config()
