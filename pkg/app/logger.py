import logging
import os
import sys
from logging import handlers

# File logging only
FILENAME = "ultratree.log"
MAX_SIZE = 5000000  # 5 MB
MAX_FILES = 5

FILE_FORMAT = "%(asctime)s - %(levelname)-7s :: %(module)s :: %(name)s : %(message)s"
CONSOLE_FORMAT = "%(levelname)-7s %(module)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

LEVEL_NAMES = ("debug", "info", "warning", "error")

logging.basicConfig()

logger = logging.getLogger("ultratree")


class LogLevelFilter(logging.Filter):
    def __init__(self, max_level):
        super(LogLevelFilter, self).__init__()

        self.max_level = max_level

    def filter(self, record):
        return record.levelno <= self.max_level


def level_from_env(value):
    """
    Map a LOG_LEVEL value onto the logger level. Unknown names fall back to
    info so a typo never silences errors.
    """
    name = (value or "info").strip().lower()
    if name not in LEVEL_NAMES:
        name = "info"
    return getattr(logging, name.upper())


def init_logger(console=False, log_dir=False, verbose=False):
    """
    Reset the 'ultratree' logger and attach its handlers:

    * RotatingFileHandler writing ultratree.log under log_dir (if log_dir)
    * two stderr StreamHandlers split at INFO/WARNING (if console)

    stdout is never touched, it carries the analysis reports. `verbose` is
    either a boolean (DEBUG vs INFO) or an explicit logging level.
    """

    remove_old_handlers()
    configure_logger(verbose)

    if log_dir:
        setup_file_logger(log_dir)

    if console:
        setup_console_logger()


def remove_old_handlers():
    for handler in logger.handlers[:]:
        if isinstance(handler, handlers.RotatingFileHandler):
            handler.close()
        elif isinstance(handler, logging.StreamHandler):
            handler.flush()

        logger.removeHandler(handler)


def configure_logger(verbose):
    logger.propagate = False
    if isinstance(verbose, bool):
        logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    else:
        logger.setLevel(verbose)


def setup_file_logger(log_dir):
    os.makedirs(log_dir, exist_ok=True)
    file_handler = handlers.RotatingFileHandler(
        os.path.join(log_dir, FILENAME),
        maxBytes=MAX_SIZE,
        backupCount=MAX_FILES,
        encoding="utf-8",
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(FILE_FORMAT, DATE_FORMAT))

    logger.addHandler(file_handler)


def _stderr_handler(level, max_level=None):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    handler.setLevel(level)
    if max_level is not None:
        handler.addFilter(LogLevelFilter(max_level))
    return handler


def setup_console_logger():
    # progress and diagnostics are filtered apart from warnings and errors
    logger.addHandler(_stderr_handler(logging.DEBUG, max_level=logging.INFO))
    logger.addHandler(_stderr_handler(logging.WARNING))


info = logger.info
error = logger.error
debug = logger.debug
warning = logger.warning
exception = logger.exception
