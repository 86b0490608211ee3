#!/usr/bin/env python3
"""Run the nine acceptance checks and print one line each."""

import sys

from quasimap import acceptance


def main() -> int:
    results = acceptance.run_all()
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
