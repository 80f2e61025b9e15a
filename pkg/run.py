#!/usr/bin/env python3
"""
ETD-MS Gradient Flow Solver Launcher

This script runs the solver's command-line interface.
"""

import sys
import os
import logging

# Add the current directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from etdms.harness.cli import main as cli_main

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stdout)
    ]
)


def main():
    """Main entry point for the application"""
    try:
        return cli_main()
    except Exception as e:
        logging.error(f"Error running application: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
