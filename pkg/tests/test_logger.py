"""
Tests for logger setup
"""

import logging
import logging.handlers

import pytest
import yaml

from src.utils.logger import setup_logger


@pytest.fixture
def logging_config(tmp_path):
    path = tmp_path / 'log.yaml'
    path.write_text(yaml.safe_dump({'logging': {
        'level': 'WARNING',
        'file': str(tmp_path / 'logs' / 'run.log'),
        'max_size_mb': 1,
        'backup_count': 2,
    }}))
    return str(path)


@pytest.fixture
def logger_name():
    name = 'lbnn-test-logger'
    yield name
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


class TestSetupLogger:
    """Handler configuration."""

    def test_reads_config(self, logging_config, logger_name, tmp_path):
        logger = setup_logger(logger_name, logging_config)
        assert logger.level == logging.WARNING
        files = [h for h in logger.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]
        assert len(files) == 1
        assert files[0].backupCount == 2
        assert (tmp_path / 'logs').is_dir()

    def test_repeated_setup_does_not_stack(self, logging_config, logger_name):
        setup_logger(logger_name, logging_config)
        logger = setup_logger(logger_name, logging_config)
        assert len(logger.handlers) == 2

    def test_verbose_forces_debug(self, logging_config, logger_name):
        assert setup_logger(logger_name, logging_config, verbose=True).level == logging.DEBUG
