import logging
import sys
import time

from datetime import datetime, timezone

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


class UTCFormatter(logging.Formatter):
    def formatTime(self, record, datefmt=None):
        dt = datetime.fromtimestamp(record.created, tz=timezone.utc)
        return dt.strftime('%Y-%m-%dT%H:%M:%S.%fZ')


class LoggerSetup:
    def __init__(self, log_level):
        self.log_level = log_level

    def setup_logging(self):
        # 1) root logger on stderr; stdout carries the results
        name = getattr(self.log_level, 'value', self.log_level)
        level = getattr(logging, str(name).upper(), logging.INFO)
        logging.converter = time.gmtime
        logging.basicConfig(
            format=LOG_FORMAT,
            level=level,
            stream=sys.stderr,
            force=True,
        )
        root_logger = logging.getLogger()
        for handler in root_logger.handlers:
            handler.setFormatter(UTCFormatter(LOG_FORMAT))

        # 2) plotting backends are chatty at DEBUG
        logging.getLogger('matplotlib').setLevel(logging.WARNING)
        logging.getLogger('PIL').setLevel(logging.WARNING)
