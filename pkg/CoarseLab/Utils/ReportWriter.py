import logging
import os

import orjson

logger = logging.getLogger(__name__)

OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def dumps(payload) -> bytes:
    """UTF-8 JSON with sorted keys; equal payloads give equal bytes."""
    return orjson.dumps(payload, option=OPTIONS)


def loads(data):
    return orjson.loads(data)


def write_json(path, payload) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "wb") as file:
        file.write(dumps(payload))
    logger.info("report written to %s", path)


def read_json(path):
    with open(path, "rb") as file:
        return orjson.loads(file.read())
