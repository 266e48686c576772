"""Entry point for running the server as a Python module."""

import argparse

import uvicorn

from aesworkbench.logging_config import configure_logging


def main() -> int:
    """Main entry point for running the server.

    Returns:
        int: Exit code.
    """
    parser = argparse.ArgumentParser()
    parser.add_argument("--host", action="store", default="127.0.0.1")
    parser.add_argument("--port", action="store", default="8000")
    parser.add_argument("--reload", action="store_true", default=False)
    parser.add_argument("--log-level", action="store", default=None)
    args = parser.parse_args()
    configure_logging(args.log_level)
    uvicorn.run(
        app="aesworkbench.server.main:app",
        host=args.host,
        port=int(args.port),
        reload=args.reload,
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
