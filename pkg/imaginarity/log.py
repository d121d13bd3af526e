import logging
import sys

from imaginarity.conf import settings
from imaginarity.helpers import get_module_class

logger = logging.getLogger("imaginarity")


class ImaginarityLogHandler(logging.StreamHandler):
    """
    Writes package records to stderr, prefixed so they stay apart from the
    tables and CSV rows written to stdout.
    """

    def __init__(self, level=logging.NOTSET, stream=None):
        super().__init__(stream)
        # a None stream resolves to sys.stderr at emit time
        self.stream = stream
        self.setLevel(level)
        self.setFormatter(logging.Formatter("[%(name)s] %(levelname)s %(message)s"))

    @property
    def stream(self):
        return self._stream if self._stream is not None else sys.stderr

    @stream.setter
    def stream(self, value):
        self._stream = value


def configure_logging(verbosity=0):
    """
    Install the handler named by ``IMAGINARITY_LOG_HANDLER`` on the package
    logger. Calling it again replaces the previously installed handler.
    """
    config = settings.IMAGINARITY_LOG_HANDLER
    level = config.get("level", "WARNING")
    if verbosity >= 2:
        level = "DEBUG"
    elif verbosity == 1:
        level = "INFO"

    handler_class = get_module_class(config["class"])
    for handler in list(logger.handlers):
        if isinstance(handler, ImaginarityLogHandler):
            logger.removeHandler(handler)

    handler = handler_class()
    handler.setLevel(level)
    logger.addHandler(handler)
    logger.setLevel(level)
    return handler
