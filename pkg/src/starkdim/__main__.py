"""Module entry point: ``python -m starkdim``."""

from .cli import main

if __name__ == "__main__":
    main()
