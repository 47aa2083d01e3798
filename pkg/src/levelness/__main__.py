"""Allow running as `python -m levelness`."""

from .cli import main

main()
