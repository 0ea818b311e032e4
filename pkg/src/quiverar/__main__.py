"""
Command line entry point for ``python -m quiverar``.
"""

from quiverar.main import main

if __name__ == "__main__":
    main()
