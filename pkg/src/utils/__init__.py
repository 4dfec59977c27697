"""
Utils package for the divisible-codes toolkit.
Contains configuration management and file naming utilities.
"""

from .config import ConfigError, ConfigManager, get_config_manager
from .naming import NamingManager, cache_file_name

__all__ = ['ConfigError', 'ConfigManager', 'get_config_manager', 'NamingManager', 'cache_file_name']
