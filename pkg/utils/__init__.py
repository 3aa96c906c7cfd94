"""
Utils module for polyhom.
"""

from .logger import setup_logger, log_performance, performance_logger, log_search_stats
from .errors import PolyhomError, InputError, ParamError
from .helpers import (
    parse_param, parse_params, parse_tuple, format_tuple,
    save_json_to_file
)

__all__ = [
    'setup_logger', 'log_performance', 'performance_logger', 'log_search_stats',
    'PolyhomError', 'InputError', 'ParamError',
    'parse_param', 'parse_params', 'parse_tuple', 'format_tuple',
    'save_json_to_file'
]
