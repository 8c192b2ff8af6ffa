import logging
import sys

logger = logging.getLogger("freecalc")


def configure_logging(level: str = "WARNING") -> None:
    # Diagnósticos siempre a stderr; stdout queda para los registros
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(level)
    logger.propagate = False


def get_logger(name: str) -> logging.Logger:
    return logger.getChild(name)
