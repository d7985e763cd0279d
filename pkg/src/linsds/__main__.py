"""Entry point for python -m linsds."""

from .cli.main import main

if __name__ == "__main__":
    main()
