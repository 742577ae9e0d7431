import logging
import sys
from datetime import datetime
from logging import Logger
from typing import Callable, Dict
ROOT_CATEGORY = 'fastescape'
LEVEL_LABELS = {'log': 'INFO', 'warn': 'WARN', 'error': 'ERROR'}
logging_enabled = False
wrapped_loggers: Dict[str, Logger] = {}


class LoggerManager:
    """Hands out loggers by category. Every message goes to stderr, stdout is reserved for JSON reports."""

    @staticmethod
    def use_logging(level: int = None):
        """Routes messages through the logging module under the fastescape logger hierarchy.

        Args:
            level: If given, attaches a stderr handler to the root logger at this level. Otherwise configuring
                logging is left to the caller.
        """
        global logging_enabled
        logging_enabled = True
        if level is not None:
            logging.basicConfig(level=level, stream=sys.stderr)

    @staticmethod
    def use_native_logger():
        """Switches back to the stderr print logger."""
        global logging_enabled
        logging_enabled = False

    @staticmethod
    def get_logger(category: str) -> Logger:
        """Returns the logger of a category, such as StripCensus or TileScheduler.

        Loggers of the logging module accept callables as messages, which are only evaluated when the record is
        emitted.

        Args:
            category: Logger category.

        Returns:
            Logger.
        """
        if not logging_enabled:
            return NativeLogger(category)
        if category not in wrapped_loggers:
            logger = logging.getLogger(f'{ROOT_CATEGORY}.{category}')
            original_log = logger._log

            def logging_func(level, msg, args, exc_info=None, extra=None, stack_info=False, stacklevel=1):
                if isinstance(msg, Callable):
                    msg = msg()
                original_log(level, msg, args, exc_info, extra, stack_info, stacklevel)
            logger._log = logging_func
            wrapped_loggers[category] = logger
        return wrapped_loggers[category]


class NativeLogger(Logger):
    """Print logger writing `[time] [LEVEL] [category] message` lines to stderr. Debug messages are dropped."""

    def debug(self, msg, *args, **kwargs):
        pass

    def info(self, msg, *args, **kwargs):
        self._log('log', msg, args)

    def warning(self, msg, *args, **kwargs):
        self._log('warn', msg, args)

    def error(self, msg, *args, **kwargs):
        self._log('error', msg, args)

    def exception(self, msg, *args, **kwargs):
        self._log('error', msg, args)

    def _log(self, level: str, msg, args, exc_info=None, extra=None, stack_info: bool = None,
             stacklevel: int = None) -> None:
        if isinstance(msg, Callable):
            msg = msg()
        print(f'[{datetime.now().isoformat()}] [{LEVEL_LABELS[level]}] [{self.name}] {msg}', *args, file=sys.stderr)
