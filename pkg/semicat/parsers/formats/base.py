"""Base class for structure block parsers."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, ClassVar, Optional

from semicat.core.exceptions import ParseError, SemicatError, ValidationError
from semicat.parsers.constants import COMMENT_CHAR, INCLUDE_KEYWORD

logger = logging.getLogger(__name__)


class LineReader:
    """Numbered, comment-free, non-blank lines of a structure file.

    Args:
        text: File contents
        source: Name used in messages
        base_dir: Directory that ``include`` paths are resolved against
    """

    def __init__(self, text: str, source: str = "<string>", base_dir: Optional[Path] = None) -> None:
        self.source = source
        self.base_dir = base_dir or Path()
        self.lines: list[tuple[int, list[str]]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split(COMMENT_CHAR, 1)[0].split()
            if tokens:
                self.lines.append((number, tokens))
        self.position = 0

    def at_end(self) -> bool:
        return self.position >= len(self.lines)

    def peek(self) -> Optional[tuple[int, list[str]]]:
        return None if self.at_end() else self.lines[self.position]

    def next(self, what: str) -> tuple[int, list[str]]:
        """Consume the next line.

        Raises:
            ParseError: If the file ends first
        """
        if self.at_end():
            last = self.lines[-1][0] if self.lines else 0
            msg = f"expected {what}, reached end of {self.source}"
            raise ParseError(msg, line=last)
        line = self.lines[self.position]
        self.position += 1
        return line

    def numeric_line_ahead(self) -> bool:
        line = self.peek()
        return line is not None and is_int(line[1][0])


def is_int(token: str) -> bool:
    return token.lstrip("-").isdigit()


def to_ints(tokens: list[str], line: int, count: Optional[int] = None) -> list[int]:
    """Convert tokens to integers, checking their number.

    Raises:
        ParseError: On a non-integer token or the wrong count
    """
    if count is not None and len(tokens) != count:
        msg = f"expected {count} integers, found {len(tokens)}"
        raise ParseError(msg, line=line)
    try:
        return [int(token) for token in tokens]
    except ValueError as e:
        msg = f"expected integers, found {' '.join(tokens)!r}"
        raise ParseError(msg, line=line, original_error=e) from e


def read_table(reader: LineReader, rows: int, width: int, what: str = "table row") -> list[list[int]]:
    return [to_ints(tokens, line, width) for line, tokens in (reader.next(what) for _ in range(rows))]


class StructureParser(ABC):
    """Base class for all structure block parsers.

    Every subclass declares the header ``keyword`` it handles and registers
    itself on definition, so nested blocks can be dispatched by keyword.
    """

    keyword: ClassVar[str] = ""
    header_arity: ClassVar[int] = 0
    registry: ClassVar[dict[str, type[StructureParser]]] = {}

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        if cls.keyword:
            StructureParser.registry[cls.keyword] = cls

    @abstractmethod
    def parse_block(self, reader: LineReader, args: list[int], line: int) -> Any:
        """Parse the body of a block whose header has already been consumed.

        Args:
            reader: Positioned after the header line
            args: Integer arguments of the header
            line: Line number of the header

        Returns:
            The validated structure
        """
        raise NotImplementedError

    def build(self, line: int, factory: Any, *args: Any, **kwargs: Any) -> Any:
        """Call a domain constructor, wrapping its errors as ValidationError."""
        try:
            return factory(*args, **kwargs)
        except ParseError:
            raise
        except SemicatError as e:
            msg = f"line {line}: invalid {self.keyword}: {e.message}"
            raise ValidationError(msg, original_error=e) from e

    @staticmethod
    def safe_read(file_path: Path, encoding: str = "utf-8") -> Optional[str]:
        """Read a file, returning None if it cannot be read."""
        try:
            return file_path.read_text(encoding=encoding)
        except (OSError, UnicodeError) as e:
            logger.warning("Failed to read %s: %s", file_path, e)
            return None


def read_block(reader: LineReader, allowed: Optional[tuple[str, ...]] = None) -> Any:
    """Read one block, dispatching on its header keyword.

    An ``include <path>`` line stands for the single block held in that file.

    Raises:
        ParseError: On an unknown or disallowed keyword, or a malformed block
    """
    line, tokens = reader.next("a block header")
    keyword, rest = tokens[0], tokens[1:]
    if keyword == INCLUDE_KEYWORD:
        if len(rest) != 1:
            msg = "include takes exactly one path"
            raise ParseError(msg, line=line)
        path = reader.base_dir / rest[0]
        text = StructureParser.safe_read(path)
        if text is None:
            msg = f"cannot read included file {path}"
            raise ParseError(msg, line=line)
        included = LineReader(text, source=str(path), base_dir=path.parent)
        block = read_block(included, allowed)
        if not included.at_end():
            msg = f"unexpected content after the block in {path}"
            raise ParseError(msg, line=included.peek()[0])
        return block

    parser_class = StructureParser.registry.get(keyword)
    if parser_class is None or (allowed is not None and keyword not in allowed):
        expected = ", ".join(allowed or sorted(StructureParser.registry))
        msg = f"unexpected block {keyword!r}, expected one of: {expected}"
        raise ParseError(msg, line=line)
    args = to_ints(rest, line, parser_class.header_arity)
    logger.debug("Parsing %s block at %s:%d", keyword, reader.source, line)
    return parser_class().parse_block(reader, args, line)
