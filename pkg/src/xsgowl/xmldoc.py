"""Ordered XML document trees built on the stdlib expat parser.

Trees keep exactly what downstream inference needs: element names with
their syntactic prefixes (no namespace-URI resolution), attributes in
document order, and child elements interleaved with text runs. Comments,
processing instructions and the XML declaration are discarded, as are
whitespace-only text runs; text inside mixed content is preserved and
adjacent runs are coalesced.

Out of scope by design: DTDs (and with them any non-predefined entity),
CDATA sections, and non-UTF-8 encodings. All are rejected with a
ParseError rather than silently accepted.
"""

from __future__ import annotations

import xml.parsers.expat
from dataclasses import dataclass, field


class ParseError(Exception):
    """Malformed or unsupported XML input."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class XmlName:
    prefix: str | None
    local: str

    def __str__(self) -> str:
        return self.local if self.prefix is None else f"{self.prefix}:{self.local}"


@dataclass(frozen=True)
class XmlElement:
    name: XmlName
    attributes: tuple[tuple[XmlName, str], ...]
    children: tuple["XmlElement | str", ...]
    source_position: tuple[int, int] = field(compare=False, default=(0, 0))

    def attribute(self, local: str) -> str | None:
        """Value of the first attribute with this local name, if any."""
        for name, value in self.attributes:
            if name.local == local:
                return value
        return None

    def child_elements(self) -> list["XmlElement"]:
        return [c for c in self.children if isinstance(c, XmlElement)]


@dataclass(frozen=True)
class XmlDocument:
    root: XmlElement
    source_id: str

    def iter_elements(self):
        """All elements in document (preorder) order."""
        stack = [self.root]
        while stack:
            el = stack.pop()
            yield el
            stack.extend(reversed(el.child_elements()))


def text_content(e: XmlElement) -> str:
    """Concatenated direct text runs, trimmed of surrounding whitespace."""
    return "".join(c for c in e.children if isinstance(c, str)).strip()


def _split_name(raw: str, pos: tuple[int, int]) -> XmlName:
    if ":" not in raw:
        return XmlName(None, raw)
    prefix, local = raw.split(":", 1)
    if not prefix or not local or ":" in local:
        raise ParseError(pos[0], pos[1], f"illegal name {raw!r}")
    return XmlName(prefix, local)


class _Frame:
    __slots__ = ("name", "attrs", "children", "pos")

    def __init__(self, name, attrs, pos):
        self.name = name
        self.attrs = attrs
        self.children: list[XmlElement | str] = []
        self.pos = pos


class _TreeBuilder:
    def __init__(self):
        self.parser = xml.parsers.expat.ParserCreate()
        self.parser.ordered_attributes = True
        self.parser.buffer_text = True
        self.parser.StartElementHandler = self.start
        self.parser.EndElementHandler = self.end
        self.parser.CharacterDataHandler = self.text
        self.parser.XmlDeclHandler = self.decl
        self.parser.StartDoctypeDeclHandler = self.doctype
        self.parser.StartCdataSectionHandler = self.cdata
        self.stack: list[_Frame] = []
        self.root: XmlElement | None = None

    def pos(self) -> tuple[int, int]:
        return (self.parser.CurrentLineNumber, self.parser.CurrentColumnNumber + 1)

    def decl(self, version, encoding, standalone):
        if encoding is not None and encoding.lower() not in ("utf-8", "ascii", "us-ascii"):
            raise ParseError(*self.pos(), f"unsupported encoding {encoding!r}")

    def doctype(self, *args):
        raise ParseError(*self.pos(), "DTDs are not supported")

    def cdata(self):
        raise ParseError(*self.pos(), "CDATA sections are not supported")

    def start(self, raw_name, raw_attrs):
        pos = self.pos()
        name = _split_name(raw_name, pos)
        attrs = []
        for i in range(0, len(raw_attrs), 2):
            attrs.append((_split_name(raw_attrs[i], pos), raw_attrs[i + 1]))
        self.stack.append(_Frame(name, attrs, pos))

    def text(self, data):
        children = self.stack[-1].children
        # coalesce runs split by discarded comments/PIs
        if children and isinstance(children[-1], str):
            children[-1] += data
        else:
            children.append(data)

    def end(self, raw_name):
        frame = self.stack.pop()
        kept = tuple(
            c for c in frame.children if not isinstance(c, str) or c.strip()
        )
        element = XmlElement(frame.name, tuple(frame.attrs), kept, frame.pos)
        if self.stack:
            self.stack[-1].children.append(element)
        else:
            self.root = element


def parse_xml(data: bytes, source_id: str) -> XmlDocument:
    """Parse UTF-8 XML bytes into a document tree.

    Raises ParseError on anything malformed: unbalanced tags, duplicate
    attributes, undefined entities, illegal characters, or the rejected
    constructs listed in the module docstring.
    """
    builder = _TreeBuilder()
    try:
        builder.parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise ParseError(
            builder.parser.ErrorLineNumber,
            builder.parser.ErrorColumnNumber + 1,
            xml.parsers.expat.errors.messages[builder.parser.ErrorCode],
        ) from None
    assert builder.root is not None
    return XmlDocument(builder.root, source_id)


def _escape_text(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(s: str) -> str:
    return (
        s.replace("&", "&amp;").replace("<", "&lt;").replace('"', "&quot;")
    )


def serialize_xml(doc: XmlDocument) -> str:
    """Write the tree back as XML text (attribute order preserved)."""
    out: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>\n']

    def emit(e: XmlElement):
        out.append(f"<{e.name}")
        for name, value in e.attributes:
            out.append(f' {name}="{_escape_attr(value)}"')
        if not e.children:
            out.append("/>")
            return
        out.append(">")
        for child in e.children:
            if isinstance(child, str):
                out.append(_escape_text(child))
            else:
                emit(child)
        out.append(f"</{e.name}>")

    emit(doc.root)
    out.append("\n")
    return "".join(out)
