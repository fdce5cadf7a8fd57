import os
import logging

_handlers: list[logging.Handler] = [logging.StreamHandler()]
if os.environ.get("PSR_LOG_FILE"):
    _handlers.append(logging.FileHandler(os.environ["PSR_LOG_FILE"]))

logging.basicConfig(
    format="%(filename)s - %(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=_handlers,
)
if os.environ.get("PSR_LOG_LEVEL"):
    logging.getLogger("psr").setLevel(os.environ["PSR_LOG_LEVEL"].upper())
elif os.environ.get("PSR_ENV") == "production":
    logging.getLogger("psr").setLevel(logging.INFO)
else:
    logging.getLogger("psr").setLevel(logging.DEBUG)


def get_logger(filename: str) -> logging.Logger:
    return logging.getLogger(filename)
