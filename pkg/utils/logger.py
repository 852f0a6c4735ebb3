import logging
import os
from datetime import datetime

from utils.config import get_log_dir, get_log_level


class CustomFormatter(logging.Formatter):
    """
    Custom formatter producing:
    [INFO/ERROR/WARN] dd-mm-yyyy hh:mm <LOG DATA>
    """
    def format(self, record):
        timestamp = datetime.fromtimestamp(record.created).strftime('%d-%m-%Y %H:%M')

        level = record.levelname
        if level == "WARNING":
            level = "WARN"

        return f"[{level}] {timestamp} {record.getMessage()}"


def setup_logger(name="kvisits", level=None):
    """
    Sets up the file logger. Terminal output is left to rich / TSV printing,
    so nothing is mirrored to stdout.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level or getattr(logging, get_log_level(), logging.INFO))

    # Avoid adding duplicate handlers if setup is called multiple times
    if logger.handlers:
        return logger

    log_dir = get_log_dir()
    try:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f"kvisits_{datetime.now().strftime('%Y-%m-%d')}.log")
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(CustomFormatter())
        logger.addHandler(file_handler)
    except OSError:
        # Read-only working directory: keep the library usable without a log file.
        logger.addHandler(logging.NullHandler())

    logger.propagate = False
    return logger


# Singleton logger instance
logger = setup_logger()
