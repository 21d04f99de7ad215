"""Run the command line from a checkout without installing the script."""
import sys

from src.cli import app

if __name__ == "__main__":
    sys.exit(app(prog_name="lambdac"))
