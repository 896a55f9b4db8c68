"""
Parser for tangle files
"""
from __future__ import annotations
from typing import Any, TypeVar, Optional, TypeAlias
from collections.abc import Collection, MutableMapping
from io import TextIOWrapper
from pathlib import Path
import json
import logging

from qkhlab.tangles.words import (Slice,
                                  SliceKind,
                                  TangleWord,
                                  TangleException,
                                  TangleFileException,
                                  validate)

Target = TypeVar("Target", str, Path)
Parsed: TypeAlias = MutableMapping[str, Any]

_log = logging.getLogger("qkhlab.tangles")

_REQUIRED_KEYS = ("n_left", "n_right", "slices")


def _open_or_return_handle(*,
                           path: Optional[Target] = None,
                           handle: Optional[TextIOWrapper] = None) -> TextIOWrapper:
    """
    If path is provided, return a handle for the file at path.
    If handle is provided, just return the handle.
    Path has priority over handle.

    :param path: path to the file.
    :param handle: handle of the file.
    """
    if path:
        try:
            return open(Path(path).expanduser(), "r")
        except OSError as e:
            raise TangleFileException(f"cannot open tangle file {path}: {e}") from e
    if handle:
        return handle
    raise TypeError("missing 1 required keyword argument between 'path' or 'handle'")


class TangleParser:
    """
    Parse a JSON tangle description
    {"n_left": n, "n_right": m, "slices": [["cup", 1], ["pos", 2], ...]}.

    :param parsing_obj: the keys the parser accepts.
    """

    def __init__(self, parsing_obj: Collection[str] = _REQUIRED_KEYS):
        self.parsing_obj = parsing_obj

    def parse(self,
              path: Optional[Target] = None,
              handle: Optional[TextIOWrapper] = None) -> TangleWord:
        """
        Read, check and validate a tangle.

        :param path: path to the tangle file.
        :param handle: already opened file.
        :return: the validated word.
        """
        file_obj = _open_or_return_handle(path=path, handle=handle)
        try:
            raw = json.load(file_obj)
        except json.JSONDecodeError as e:
            raise TangleFileException(f"tangle file is not valid JSON: {e}") from e
        finally:
            if path:
                file_obj.close()
        return self.parse_object(raw)

    def parse_object(self, raw: Any) -> TangleWord:
        if not isinstance(raw, dict):
            raise TangleFileException("a tangle must be a JSON object")
        unknown = set(raw) - set(self.parsing_obj)
        if unknown:
            raise TangleFileException(f"unrecognized keys: {', '.join(sorted(unknown))}."
                                      f"\nRecognized keys: {', '.join(self.parsing_obj)}")
        parsed: Parsed = {}
        for name in self.parsing_obj:
            if name not in raw:
                raise TangleFileException(f"missing key '{name}'")
            parser = getattr(self, f"_{name}_parser", self._count_parser)
            parsed[name] = parser(raw[name])

        word = TangleWord(parsed["n_left"], parsed["n_right"], parsed["slices"])
        try:
            validate(word)
        except TangleException as e:
            raise TangleFileException(str(e)) from e
        _log.debug("parsed a (%d,%d) tangle with %d slices",
                   word.n_left, word.n_right, len(word.slices))
        return word

    def _count_parser(self, value: Any) -> int:
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise TangleFileException(f"endpoint count must be a nonnegative integer, got {value!r}")
        return value

    def _slices_parser(self, value: Any) -> tuple[Slice, ...]:
        if not isinstance(value, list):
            raise TangleFileException("'slices' must be a list")
        slices = []
        for t, item in enumerate(value):
            if not isinstance(item, list) or len(item) != 2:
                raise TangleFileException(f"slice {t}: expected [kind, position], got {item!r}")
            kind, position = item
            try:
                slice_kind = SliceKind(str(kind).lower())
            except ValueError as e:
                raise TangleFileException(f"slice {t}: unknown kind {kind!r}") from e
            if isinstance(position, bool) or not isinstance(position, int):
                raise TangleFileException(f"slice {t}: position must be an integer")
            slices.append(Slice(slice_kind, position))
        return tuple(slices)


def load_tangle(path: Target) -> TangleWord:
    return TangleParser().parse(path=path)
