"""Module entry point: python -m seplab."""

from .cli import main

raise SystemExit(main())
