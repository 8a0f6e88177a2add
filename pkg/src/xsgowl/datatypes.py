"""Built-in datatype lattice used for value classification and merging.

The lattice covers the five types a value can be classified as:

    boolean   integer
       \\         |
        \\     decimal     NCName
         \\       |       /
          ------ string --

string is the top; integer < decimal < string; boolean and NCName sit
directly below string. The join of any two order-incomparable types is
string. Classification is deliberately conservative: boolean matches only
the literal "true"/"false" so numeric 0/1 stay integers, and nothing
richer than these five is attempted (dates, IDs and the like would be
false precision on small samples).
"""

from __future__ import annotations

import re

BOOLEAN = "boolean"
INTEGER = "integer"
DECIMAL = "decimal"
NCNAME = "NCName"
STRING = "string"

#: Lattice members, most specific first (classification probe order).
LATTICE_TYPES = (BOOLEAN, INTEGER, DECIMAL, NCNAME, STRING)

# Strictly-below relation; string is implicit top for every member.
_BELOW = {
    BOOLEAN: {STRING},
    INTEGER: {DECIMAL, STRING},
    DECIMAL: {STRING},
    NCNAME: {STRING},
    STRING: set(),
}

_INTEGER_RE = re.compile(r"[+-]?[0-9]+\Z")
_DECIMAL_RE = re.compile(r"[+-]?(?:[0-9]+\.[0-9]*|\.[0-9]+)\Z")


def is_ncname(value: str) -> bool:
    """Non-colonized name: letter or underscore, then letters, digits,
    hyphens, underscores, periods; no colon, no whitespace."""
    if not value:
        return False
    first = value[0]
    if not (first.isalpha() or first == "_"):
        return False
    return all(c.isalpha() or c.isdigit() or c in ".-_" for c in value[1:])


def infer_datatype(value: str) -> str:
    """Classify a lexical value as the most specific lattice type."""
    if value in ("true", "false"):
        return BOOLEAN
    if _INTEGER_RE.match(value):
        return INTEGER
    if _DECIMAL_RE.match(value):
        return DECIMAL
    if is_ncname(value):
        return NCNAME
    return STRING


def join_datatype(a: str, b: str) -> str:
    """Least upper bound of two lattice types."""
    if a == b:
        return a
    if b in _BELOW[a]:
        return b
    if a in _BELOW[b]:
        return a
    return STRING


def join_all(types) -> str:
    it = iter(types)
    out = next(it)
    for t in it:
        out = join_datatype(out, t)
    return out


# Lexical validity per XSD built-in, for the structural validator and for
# ABox literals. Types without an entry are accepted unchecked (facet
# checking beyond the lexical match is out of scope). xs:boolean's full
# lexical space includes 0/1 even though classification does not use them.
_LEXICAL = {
    BOOLEAN: lambda v: v in ("true", "false", "0", "1"),
    INTEGER: lambda v: bool(_INTEGER_RE.match(v)),
    DECIMAL: lambda v: bool(_INTEGER_RE.match(v)) or bool(_DECIMAL_RE.match(v)),
    NCNAME: is_ncname,
    STRING: lambda v: True,
}

# Integer-family aliases share xs:integer's lexical check (sign + digits is
# a sound superset for each bounded variant).
for _alias in (
    "long", "int", "short", "byte",
    "nonNegativeInteger", "positiveInteger",
    "nonPositiveInteger", "negativeInteger",
    "unsignedLong", "unsignedInt", "unsignedShort", "unsignedByte",
):
    _LEXICAL[_alias] = _LEXICAL[INTEGER]


def lexically_valid(value: str, datatype: str) -> bool:
    check = _LEXICAL.get(datatype)
    return True if check is None else check(value)
