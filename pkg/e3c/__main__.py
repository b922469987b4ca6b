"""Entry point for ``python -m e3c``."""
from .cli import main

raise SystemExit(main())
