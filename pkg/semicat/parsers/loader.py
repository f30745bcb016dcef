"""Entry points for reading structure files."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Union

from semicat.core.exceptions import ParseError
from semicat.parsers.formats import LineReader, StructureParser, read_block

logger = logging.getLogger(__name__)


def parse_text(text: str, source: str = "<string>", base_dir: Union[str, Path, None] = None) -> Any:
    """Parse a single structure block from text.

    Raises:
        ParseError: On malformed input, with the line number
        ValidationError: If the structure violates its invariants
    """
    reader = LineReader(text, source=source, base_dir=Path(base_dir) if base_dir is not None else None)
    if reader.at_end():
        msg = f"{source} holds no structure"
        raise ParseError(msg)
    structure = read_block(reader)
    if not reader.at_end():
        line, tokens = reader.peek()
        msg = f"unexpected {tokens[0]!r} after the structure"
        raise ParseError(msg, line=line)
    return structure


def parse_structure(path: Union[str, Path]) -> Any:
    """Read and validate the structure held in ``path``.

    Raises:
        ParseError: If the file cannot be read or is malformed
        ValidationError: If the structure violates its invariants
    """
    path = Path(path)
    text = StructureParser.safe_read(path)
    if text is None:
        msg = f"Cannot read {path}"
        raise ParseError(msg)
    logger.debug("Parsing %s", path)
    return parse_text(text, source=str(path), base_dir=path.parent)


def parse_fix_set(path: Union[str, Path]) -> frozenset[int]:
    """Read a set of element indices: whitespace-separated integers, ``#`` comments allowed.

    Raises:
        ParseError: If the file cannot be read or holds a non-integer
    """
    path = Path(path)
    text = StructureParser.safe_read(path)
    if text is None:
        msg = f"Cannot read {path}"
        raise ParseError(msg)
    elements: set[int] = set()
    for line, tokens in LineReader(text, source=str(path)).lines:
        for token in tokens:
            try:
                elements.add(int(token))
            except ValueError as e:
                msg = f"{path}: expected an element index, found {token!r}"
                raise ParseError(msg, line=line, original_error=e) from e
    return frozenset(elements)
