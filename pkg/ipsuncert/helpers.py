import logging
import logging.config
import sys
from configparser import ConfigParser, Error as ConfigError

import numpy

LOG_FORMAT = ('%(asctime)s %(levelname)-5.5s [%(name)s][%(threadName)s] '
              '%(message)s')
LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def fmt(value):
    """Return `value` in fixed notation with 6 significant digits."""
    return numpy.format_float_positional(float(value), precision=6,
                                         unique=False, fractional=False,
                                         trim='-')


def has_logging_sections(config_path):
    """Return True if the ini file at `config_path` configures logging."""
    config = ConfigParser(interpolation=None)
    try:
        read = config.read(config_path, encoding='utf-8')
    except ConfigError:
        return False
    return bool(read) and config.has_section('loggers')


def setup_logging(config_path=None, verbosity=0):
    """Configure logging from `config_path` or a stderr handler.

    :param config_path: An ini file; used only if it has a [loggers] section.
    :param verbosity: 0 for WARNING, 1 for INFO and 2 or more for DEBUG.

    """
    if config_path and has_logging_sections(config_path):
        logging.config.fileConfig(config_path,
                                  disable_existing_loggers=False)
        return
    logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr,
                        level=LEVELS[min(verbosity, len(LEVELS) - 1)])
