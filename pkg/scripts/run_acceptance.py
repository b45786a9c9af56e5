#!/usr/bin/env python3
"""Run the acceptance suite with one pass/fail line per criterion."""

import subprocess
import sys
from pathlib import Path


def main():
    root = Path(__file__).resolve().parent.parent
    cmd = [
        sys.executable,
        "-m",
        "pytest",
        str(root / "tests" / "test_acceptance.py"),
        "-v",
        "-s",
        "--tb=short",
    ]
    return subprocess.call(cmd)


if __name__ == "__main__":
    sys.exit(main())
