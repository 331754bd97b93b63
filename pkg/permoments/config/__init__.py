"""Application configuration and logging"""

from .config import JSONFormatter, Settings, get_settings, setup_logging

__all__ = [
    'JSONFormatter',
    'Settings',
    'get_settings',
    'setup_logging',
]
