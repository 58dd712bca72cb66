#!/usr/bin/env python3
"""
Qudit stabilizer codes
Builds [[n,k,d]]_{p^m} codes from classical codes, decodes them and runs simulations.
"""
import sys

from cli import main
from config import LOG_LEVEL
from utils import setup_logging

if __name__ == "__main__":
    try:
        setup_logging(LOG_LEVEL)
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nОстановлено пользователем", file=sys.stderr)
        sys.exit(130)
