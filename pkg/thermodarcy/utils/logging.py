"""
This module contains helper functions for project logging.
"""

import os
import sys
import gzip
import logging
import logging.handlers

__author__ = 'Thermodarcy developers'

LOG_DIR = './log'
LOG_FILENAME = 'thermodarcy.log'
CLI_LOGGER = 'THERMODARCY_CLI'


def __namer(name):
    return name + ".gz"


def __rotator(source, dest):
    with open(source, "rb") as src:
        with gzip.open(dest, "wb") as trg:
            trg.writelines(src)
    os.remove(source)


def cli_logger() -> logging.Logger:
    return logging.getLogger(CLI_LOGGER)


def setup_cli_logger() -> logging.Logger:
    """
    Setup the CLI project logger 'THERMODARCY_CLI'.

    Logger has configured a standard console_handler writing plain messages to stdout.
    """
    formatter = logging.Formatter('%(message)s')
    logger = logging.getLogger(CLI_LOGGER)
    logger.setLevel(logging.INFO)
    if not logger.handlers:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
    return logger


def setup_thermodarcy_logger(debug: bool = False, process_id: bool = False, log_dir: str = LOG_DIR) -> logging.Logger:
    """
    Setup the project logger 'thermodarcy'.

    Logger has configured a file_handler writing logs into rotating file with compression of rotated files.
    With `process_id` every record carries the id of the emitting process (parallel sweeps).

    Each module-level logger must start with 'thermodarcy.' to inherit the setup.
    """
    os.makedirs(log_dir, exist_ok=True)

    if process_id:
        formatter = logging.Formatter(
            '[%(process)d] %(asctime)s - %(levelname)s - %(message)s - [%(filename)s:%(lineno)s - %(funcName)s() ]',
            datefmt='%m/%d/%Y %H:%M:%S',
        )
    else:
        formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(message)s - [%(filename)s:%(lineno)s - %(funcName)s() ]',
            datefmt='%m/%d/%Y %H:%M:%S',
        )

    file_handler = logging.handlers.RotatingFileHandler(
        os.path.join(log_dir, LOG_FILENAME), maxBytes=50000000, backupCount=20
    )
    file_handler.setFormatter(formatter)
    file_handler.rotator = __rotator
    file_handler.namer = __namer

    # Setup project logger, not root
    logger = logging.getLogger('thermodarcy')
    logger.setLevel(logging.DEBUG if debug else logging.INFO)
    for handler in list(logger.handlers):
        if isinstance(handler, logging.handlers.RotatingFileHandler):
            logger.removeHandler(handler)
            handler.close()
    logger.addHandler(file_handler)

    return logger
