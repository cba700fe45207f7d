"""Utility modules for the LBNN workbench."""

from .config_loader import ConfigLoader, RunConfig
from .file_manager import FileManager
from .logger import setup_logger

__all__ = ['setup_logger', 'FileManager', 'ConfigLoader', 'RunConfig']
