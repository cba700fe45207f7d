"""
LBNN Workbench - Main Entry Point
Evolve and explain local binary neural networks
"""

import sys
from pathlib import Path

# Add src to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root / 'src'))

from src.ui.cli_interface import EXIT_ERROR, CLIInterface
from src.utils.logger import setup_logger


def main():
    """Main entry point for the LBNN workbench."""
    config_file = project_root / 'config' / 'lbnn_config.yaml'
    logger = setup_logger('src', str(config_file) if config_file.exists() else None)

    logger.debug("Starting LBNN Workbench")

    try:
        cli = CLIInterface()
        sys.exit(cli.run())

    except KeyboardInterrupt:
        logger.info("Application terminated by user")
        sys.exit(EXIT_ERROR)

    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        print(f"Error: {e}")
        sys.exit(EXIT_ERROR)


if __name__ == '__main__':
    main()
