"""
Logging setup for expcong

Python built-in logging module is used with standard logging practices.
Data logged includes:
    - Pipeline milestones (conditions built, system built, verdicts)
    - Solver search sizes and cap hits
    - Scan progress and discrepancies
    - Cache statistics
    - Timings of expensive operations

Records always go to stderr; stdout is reserved for the JSON document.

Version: 1.0.0
"""
import logging
import logging.handlers
import os
import sys
import time
from functools import wraps
from ..config import LOG_LEVEL, LOG_FILE, LOG_FORMAT, LOG_DATE_FORMAT


def setup_logging(level: str = None):
    """Setup basic logging configuration using config values"""
    level_name = (level or LOG_LEVEL).upper()
    handlers = [logging.StreamHandler(sys.stderr)]

    if LOG_FILE:
        log_dir = os.path.dirname(LOG_FILE)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(
            logging.handlers.RotatingFileHandler(
                LOG_FILE,
                maxBytes=10*1024*1024,  # 10MB
                backupCount=5
            )
        )

    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
        handlers=handlers,
        force=True,
    )

    logger = logging.getLogger(__name__)
    logger.debug(f"📋 Logging configured - Level: {level_name}, File: {LOG_FILE or 'none'}")


def get_logger(name: str = None):
    """Get logger instance"""
    return logging.getLogger(name or __name__)


def log_time(func):
    """Decorator to log function execution time"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        logger = get_logger(func.__module__)
        try:
            result = func(*args, **kwargs)
            duration = round((time.perf_counter() - start) * 1000, 2)
            logger.debug(f"⏱️ {func.__name__} took {duration}ms")
            return result
        except Exception as e:
            duration = round((time.perf_counter() - start) * 1000, 2)
            logger.error(f"❌ {func.__name__} failed after {duration}ms: {str(e)}")
            raise

    return wrapper
