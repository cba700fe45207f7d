"""
Logging configuration for the LBNN workbench
"""

import logging
import logging.handlers
from pathlib import Path
from typing import Optional

import yaml

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(name: str = 'src', config_file: Optional[str] = None,
                 verbose: bool = False) -> logging.Logger:
    """
    Set up logger with file and console handlers.

    Calling it again replaces the handlers it installed before.

    Args:
        name: Logger name (the package logger, so module loggers inherit it)
        config_file: Path to a YAML file with a `logging:` section
        verbose: Force DEBUG level

    Returns:
        Configured logger
    """
    logger = logging.getLogger(name)

    log_level = logging.INFO
    log_file = 'logs/lbnn.log'
    max_bytes = 10 * 1024 * 1024  # 10 MB
    backup_count = 5
    log_format = DEFAULT_FORMAT

    if config_file and Path(config_file).exists():
        try:
            with open(config_file, 'r') as f:
                config = yaml.safe_load(f) or {}
                logging_config = config.get('logging', {}) or {}

                log_level = getattr(logging, str(logging_config.get('level', 'INFO')).upper())
                log_file = logging_config.get('file', log_file)
                max_bytes = int(logging_config.get('max_size_mb', 10) * 1024 * 1024)
                backup_count = logging_config.get('backup_count', 5)
                log_format = logging_config.get('format', log_format)
        except (OSError, yaml.YAMLError, AttributeError) as e:
            print(f"Warning: Could not load logging config: {e}")

    if verbose:
        log_level = logging.DEBUG

    logger.setLevel(log_level)

    for handler in [h for h in logger.handlers if getattr(h, '_lbnn_handler', False)]:
        logger.removeHandler(handler)
        handler.close()

    handlers = [logging.StreamHandler()]
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count
        ))

    for handler in handlers:
        handler.setLevel(log_level)
        handler.setFormatter(logging.Formatter(log_format))
        handler._lbnn_handler = True
        logger.addHandler(handler)

    return logger
