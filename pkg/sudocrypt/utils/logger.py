import logging
import sys
import typing as t
from types import FrameType

from loguru import logger

_LOGGERS_MOVE_TO_LOGURU = [
    "py.warnings",
    "asyncio",
    "concurrent.futures",
]

_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


class InterceptHandler(logging.Handler):
    def emit(self, record: logging.LogRecord) -> None:
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = str(record.levelno)
        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = t.cast(FrameType, frame.f_back)
            depth += 1
        logger.opt(depth=depth, exception=record.exc_info).log(
            level,
            record.getMessage(),
        )


class Logger:
    def __init__(self):
        self.logger = logger
        self.logger.remove()

    def init_config(
        self, log_level: str = "WARNING", log_path: t.Optional[str] = None
    ) -> None:
        logging.getLogger().handlers = [InterceptHandler()]
        logging.captureWarnings(True)
        for logger_name in _LOGGERS_MOVE_TO_LOGURU:
            logging.getLogger(logger_name).handlers = [InterceptHandler()]

        handlers: list[dict[str, t.Any]] = [
            {
                "sink": sys.stderr,
                "level": log_level,
                "format": _FORMAT,
                "serialize": False,
            },
        ]
        if log_path:
            handlers.append(
                {
                    "sink": log_path,
                    "level": "DEBUG",
                    "serialize": True,  # JSON lines
                }
            )
        logger.configure(handlers=handlers)

    def get_logger(self):
        return self.logger


Loggers = Logger()
log = Loggers.get_logger()


def get_logger(name=None):
    return Loggers.get_logger()
