#!/usr/bin/env python3
"""
Orbita command-line entry point.

Usage:
    python main.py ellipse --a 5 --c 3
    python main.py --format json solve --C 1 --pos 1,0 --vel 0,1.2
"""

import sys

from orbita.main import main

if __name__ == "__main__":
    sys.exit(main())
