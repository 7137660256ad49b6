#!/usr/bin/env python3
"""
Mutual-visibility toolkit - command-line entry point
Run `python mutvis.py --help` for the subcommands
"""

from mvd.cli import main

if __name__ == "__main__":
    main()
