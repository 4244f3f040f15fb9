"""Run the swallowtail command line interface with ``python -m swallowtail``."""

import sys

from swallowtail.experiments.cli import main

if __name__ == "__main__":
    sys.exit(main())
