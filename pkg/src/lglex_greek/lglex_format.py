"""Bit-exact serialization of the lexicon: text format, reader, XML.

Text grammar (UTF-8, no optional whitespace):

    document  = [ block *( "\\n" block ) ]
    block     = "ID=" id "\\n" *( key "=" value "\\n" )
    value     = string / record / list / empty
    string    = '"' *CHAR '"'          ; CHAR is any char except '"' and newlines
    record    = "[" [ field *( "," field ) ] "]"
    list      = "(" [ field *( "," field ) ] ")"
    field     = key "=" value
    key       = ALPHA *( ALPHA / DIGIT / "-" )
    empty     = ""

Each section sits on one line (no wrapping); a blank line separates
entries; a non-empty document ends with exactly one newline. An empty
document is zero bytes. `read_text` is the exact inverse of `write_text`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union
from xml.etree import ElementTree as ET

from .errors import LGLexSyntaxError, ValueContainsQuote

_KEY_RE = re.compile(r"[A-Za-z][A-Za-z0-9-]*")
_ID_RE = re.compile(r"[^\s=]+")


@dataclass(frozen=True)
class Str:
    value: str

    def __post_init__(self) -> None:
        if '"' in self.value:
            raise ValueContainsQuote(f"value contains a double quote: {self.value!r}")
        if "\n" in self.value or "\r" in self.value:
            raise ValueError(f"value contains a newline: {self.value!r}")


@dataclass(frozen=True)
class EmptyStr:
    pass


Field = tuple[str, "Value"]


@dataclass(frozen=True)
class Record:
    fields: tuple[Field, ...] = ()


@dataclass(frozen=True)
class Lst:
    items: tuple[Field, ...] = ()


Value = Union[Str, EmptyStr, Record, Lst]


@dataclass(frozen=True)
class LGLexEntryDoc:
    entry_id: str
    sections: tuple[Field, ...]

    def section(self, key: str) -> Value:
        for k, v in self.sections:
            if k == key:
                return v
        raise KeyError(key)


@dataclass(frozen=True)
class LGLexLexicon:
    entries: tuple[LGLexEntryDoc, ...] = ()


# --- text writer ------------------------------------------------------------------


def _check_key(key: str) -> str:
    if not _KEY_RE.fullmatch(key):
        raise ValueError(f"bad key {key!r}")
    return key


def _render_value(value: Value) -> str:
    if isinstance(value, Str):
        return f'"{value.value}"'
    if isinstance(value, EmptyStr):
        return ""
    if isinstance(value, Record):
        inner = ",".join(f"{_check_key(k)}={_render_value(v)}" for k, v in value.fields)
        return f"[{inner}]"
    if isinstance(value, Lst):
        inner = ",".join(f"{_check_key(k)}={_render_value(v)}" for k, v in value.items)
        return f"({inner})"
    raise TypeError(f"not a lexicon value: {value!r}")


def write_text(lexicon: LGLexLexicon) -> bytes:
    blocks = []
    for entry in lexicon.entries:
        if not _ID_RE.fullmatch(entry.entry_id):
            raise ValueError(f"bad entry id {entry.entry_id!r}")
        lines = [f"ID={entry.entry_id}"]
        for key, value in entry.sections:
            lines.append(f"{_check_key(key)}={_render_value(value)}")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks).encode("utf-8")


# --- text reader ------------------------------------------------------------------


class _Reader:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def _line_col(self) -> tuple[int, int]:
        consumed = self.text[: self.pos]
        line = consumed.count("\n") + 1
        column = self.pos - (consumed.rfind("\n") + 1) + 1
        return line, column

    def error(self, message: str) -> LGLexSyntaxError:
        line, column = self._line_col()
        return LGLexSyntaxError(message, line, column)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def literal(self, expected: str) -> None:
        if not self.text.startswith(expected, self.pos):
            raise self.error(f"expected {expected!r}")
        self.pos += len(expected)

    def regex(self, pattern: re.Pattern[str], what: str) -> str:
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def read_value(self) -> Value:
        ch = self.peek()
        if ch == '"':
            self.pos += 1
            end = self.text.find('"', self.pos)
            if end == -1:
                raise self.error("unterminated string")
            raw = self.text[self.pos : end]
            if "\n" in raw or "\r" in raw:
                raise self.error("newline inside string")
            self.pos = end + 1
            return Str(raw)
        if ch == "[":
            return Record(self._read_fields("[", "]"))
        if ch == "(":
            return Lst(self._read_fields("(", ")"))
        if ch in (",", ")", "]", "\n") or self.at_end():
            return EmptyStr()
        raise self.error(f"unexpected character {ch!r} in value")

    def _read_fields(self, opener: str, closer: str) -> tuple[Field, ...]:
        self.literal(opener)
        fields: list[Field] = []
        if self.peek() == closer:
            self.pos += 1
            return ()
        while True:
            key = self.regex(_KEY_RE, "key")
            self.literal("=")
            fields.append((key, self.read_value()))
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                continue
            if ch == closer:
                self.pos += 1
                return tuple(fields)
            raise self.error(f"expected ',' or {closer!r}")

    def read_entry(self) -> LGLexEntryDoc:
        self.literal("ID=")
        entry_id = self.regex(_ID_RE, "entry id")
        self.literal("\n")
        sections: list[Field] = []
        while not self.at_end() and self.peek() != "\n":
            key = self.regex(_KEY_RE, "section key")
            self.literal("=")
            value = self.read_value()
            self.literal("\n")
            sections.append((key, value))
        return LGLexEntryDoc(entry_id, tuple(sections))


def read_text(data: bytes) -> LGLexLexicon:
    """Parse text-format bytes produced by `write_text` (exact inverse)."""
    text = data.decode("utf-8")
    if text == "":
        return LGLexLexicon()
    reader = _Reader(text)
    entries = [reader.read_entry()]
    while not reader.at_end():
        reader.literal("\n")
        entries.append(reader.read_entry())
    return LGLexLexicon(tuple(entries))


# --- XML writer -------------------------------------------------------------------


def _attach_field(parent: ET.Element, key: str, value: Value) -> None:
    _check_key(key)
    if isinstance(value, Str):
        if key in parent.attrib:
            child = ET.SubElement(parent, key)
            child.text = value.value
        else:
            parent.set(key, value.value)
    elif isinstance(value, EmptyStr):
        if key in parent.attrib:
            ET.SubElement(parent, key)
        else:
            parent.set(key, "")
    elif isinstance(value, Record):
        child = ET.SubElement(parent, key)
        for k, v in value.fields:
            _attach_field(child, k, v)
    elif isinstance(value, Lst):
        child = ET.SubElement(parent, key)
        for k, v in value.items:
            _attach_item(child, k, v)
    else:
        raise TypeError(f"not a lexicon value: {value!r}")


def _attach_item(parent: ET.Element, key: str, value: Value) -> None:
    """List items become repeated child elements (never attributes)."""
    _check_key(key)
    if isinstance(value, Str):
        child = ET.SubElement(parent, key)
        child.text = value.value
    elif isinstance(value, EmptyStr):
        ET.SubElement(parent, key)
    elif isinstance(value, Record):
        child = ET.SubElement(parent, key)
        for k, v in value.fields:
            _attach_field(child, k, v)
    elif isinstance(value, Lst):
        child = ET.SubElement(parent, key)
        for k, v in value.items:
            _attach_item(child, k, v)
    else:
        raise TypeError(f"not a lexicon value: {value!r}")


def write_xml(lexicon: LGLexLexicon) -> bytes:
    root = ET.Element("lglex")
    for entry in lexicon.entries:
        element = ET.SubElement(root, "entry", {"id": entry.entry_id})
        for key, value in entry.sections:
            _attach_field(element, key, value)
    return ET.tostring(root, encoding="UTF-8", xml_declaration=True) + b"\n"
