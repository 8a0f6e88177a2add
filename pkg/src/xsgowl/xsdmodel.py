"""XML Schema component model: reader, writer and a structural validator.

The model covers exactly the construct set this toolchain emits or
consumes: global and local element declarations, ref= particles inside a
single xs:sequence, anonymous and named complex types, attributes, named
simple types with a restriction base, element/attribute groups,
complexContent extension/restriction, and mixed="true". Unsupported
constructs (xs:choice, xs:all, substitution groups, xs:any, imports,
simpleContent, ...) raise SchemaError naming the construct rather than
being dropped.

Validation is deliberately structural, not a full XSD 1.0 validator: it
checks element/attribute presence, per-name occurrence counts, lexical
datatype fit and text placement. Child order is not enforced; occurrence
bounds other than 0/1/unbounded are accepted and checked as written.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .datatypes import lexically_valid
from .xmldoc import XmlDocument, XmlElement, parse_xml, text_content

logger = logging.getLogger("xsgowl.xsd")

XSD_NS = "http://www.w3.org/2001/XMLSchema"

#: Built-in XSD datatype local names (primitive plus the derived ones that
#: show up in real schemas). Anything not listed here must resolve to a
#: schema-defined simple type.
XSD_BUILTINS = frozenset({
    "anyType", "anySimpleType",
    "string", "normalizedString", "token", "language",
    "Name", "NCName", "NMTOKEN", "ID", "IDREF", "ENTITY", "QName",
    "boolean", "decimal", "float", "double",
    "integer", "long", "int", "short", "byte",
    "nonNegativeInteger", "positiveInteger",
    "nonPositiveInteger", "negativeInteger",
    "unsignedLong", "unsignedInt", "unsignedShort", "unsignedByte",
    "duration", "dateTime", "time", "date",
    "gYearMonth", "gYear", "gMonthDay", "gDay", "gMonth",
    "hexBinary", "base64Binary", "anyURI", "NOTATION",
})


class SchemaError(Exception):
    """Unreadable, unresolved or unsupported schema content."""

    def __init__(self, position: tuple[int, int] | None, message: str):
        at = f"{position[0]}:{position[1]}: " if position else ""
        super().__init__(at + message)
        self.position = position
        self.message = message


@dataclass(frozen=True)
class BuiltinRef:
    """Reference to a built-in XSD datatype by local name."""
    name: str


@dataclass(frozen=True)
class NamedTypeRef:
    """Reference to a schema-defined global type by name."""
    name: str


@dataclass(frozen=True)
class AttrDecl:
    name: str
    datatype: BuiltinRef | NamedTypeRef
    required: bool = False
    position: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class Particle:
    """One element particle of a content model: either a ref to a global
    element or a local declaration, never both."""
    ref: str | None
    decl: "ElementDecl | None"
    min_occurs: int = 1
    max_occurs: int | None = 1  # None = unbounded

    @property
    def name(self) -> str:
        return self.ref if self.ref is not None else self.decl.name


@dataclass(frozen=True)
class ComplexType:
    name: str | None  # None iff anonymous (inline)
    particles: tuple[Particle, ...] = ()
    attributes: tuple[AttrDecl, ...] = ()
    group_refs: tuple[str, ...] = ()
    attr_group_refs: tuple[str, ...] = ()
    mixed: bool = False
    derivation: tuple[str, str] | None = None  # ("extension"|"restriction", base)
    position: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class SimpleType:
    name: str
    base: str  # built-in local name
    position: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class ElementDecl:
    name: str
    type: BuiltinRef | NamedTypeRef | ComplexType
    scope: str = "global"  # "global" | "local"
    position: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class GroupDecl:
    name: str
    particles: tuple[Particle, ...]
    position: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class AttrGroupDecl:
    name: str
    attributes: tuple[AttrDecl, ...]
    position: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class SchemaModel:
    global_elements: tuple[ElementDecl, ...]
    global_types: tuple[ComplexType | SimpleType, ...] = ()
    element_groups: tuple[GroupDecl, ...] = ()
    attribute_groups: tuple[AttrGroupDecl, ...] = ()
    source_id: str = field(compare=False, default="")

    def element(self, name: str) -> ElementDecl | None:
        for e in self.global_elements:
            if e.name == name:
                return e
        return None

    def type_named(self, name: str) -> ComplexType | SimpleType | None:
        for t in self.global_types:
            if t.name == name:
                return t
        return None

    def group(self, name: str) -> GroupDecl | None:
        for g in self.element_groups:
            if g.name == name:
                return g
        return None

    def attr_group(self, name: str) -> AttrGroupDecl | None:
        for g in self.attribute_groups:
            if g.name == name:
                return g
        return None


# ---------------------------------------------------------------------------
# reference resolution


def _check_references(model: SchemaModel) -> None:
    """Raise SchemaError on duplicate global names or dangling references."""
    for kind, names in (
        ("element", [e.name for e in model.global_elements]),
        ("type", [t.name for t in model.global_types]),
        ("group", [g.name for g in model.element_groups]),
        ("attributeGroup", [g.name for g in model.attribute_groups]),
    ):
        seen = set()
        for n in names:
            if n in seen:
                raise SchemaError(None, f"duplicate global {kind} name {n!r}")
            seen.add(n)

    def check_type_ref(ref, where: str, position):
        if isinstance(ref, BuiltinRef):
            return
        target = model.type_named(ref.name)
        if target is None:
            raise SchemaError(position, f"unresolved type reference {ref.name!r} in {where}")

    def check_particles(particles, where: str):
        for p in particles:
            if p.ref is not None:
                if model.element(p.ref) is None:
                    raise SchemaError(None, f"unresolved element reference {p.ref!r} in {where}")
            else:
                check_element(p.decl)

    def check_complex(ct: ComplexType, where: str):
        check_particles(ct.particles, where)
        for a in ct.attributes:
            check_type_ref(a.datatype, f"attribute {a.name!r} of {where}", a.position)
            if isinstance(a.datatype, NamedTypeRef):
                target = model.type_named(a.datatype.name)
                if not isinstance(target, SimpleType):
                    raise SchemaError(
                        a.position,
                        f"attribute {a.name!r} of {where} must reference a simple type",
                    )
        for g in ct.group_refs:
            if model.group(g) is None:
                raise SchemaError(ct.position, f"unresolved group reference {g!r} in {where}")
        for g in ct.attr_group_refs:
            if model.attr_group(g) is None:
                raise SchemaError(
                    ct.position, f"unresolved attributeGroup reference {g!r} in {where}"
                )
        if ct.derivation is not None:
            base = model.type_named(ct.derivation[1])
            if not isinstance(base, ComplexType):
                raise SchemaError(
                    ct.position,
                    f"derivation base {ct.derivation[1]!r} of {where} is not a complex type",
                )

    def check_element(e: ElementDecl):
        if isinstance(e.type, ComplexType):
            check_complex(e.type, f"element {e.name!r}")
        else:
            check_type_ref(e.type, f"element {e.name!r}", e.position)

    for e in model.global_elements:
        check_element(e)
    for t in model.global_types:
        if isinstance(t, ComplexType):
            check_complex(t, f"type {t.name!r}")
    for g in model.element_groups:
        check_particles(g.particles, f"group {g.name!r}")
    for ag in model.attribute_groups:
        for a in ag.attributes:
            check_type_ref(a.datatype, f"attributeGroup {ag.name!r}", a.position)

    # derivation chains must terminate
    for t in model.global_types:
        if not isinstance(t, ComplexType):
            continue
        seen = {t.name}
        cur = t
        while cur.derivation is not None:
            base = model.type_named(cur.derivation[1])
            if base.name in seen:
                raise SchemaError(t.position, f"circular derivation involving {t.name!r}")
            seen.add(base.name)
            cur = base


# ---------------------------------------------------------------------------
# reader


class _SchemaReader:
    def __init__(self, doc: XmlDocument, source_id: str):
        self.doc = doc
        self.source_id = source_id
        self.xsd_prefixes: set[str] = set()
        self.default_is_xsd = False

    def read(self) -> SchemaModel:
        root = self.doc.root
        for name, value in root.attributes:
            if name.prefix == "xmlns" and value == XSD_NS:
                self.xsd_prefixes.add(name.local)
            elif name.prefix is None and name.local == "xmlns" and value == XSD_NS:
                self.default_is_xsd = True
        if not self.is_xsd(root) or root.name.local != "schema":
            raise SchemaError(root.source_position, "root element is not an XML Schema")

        elements: list[ElementDecl] = []
        types: list[ComplexType | SimpleType] = []
        groups: list[GroupDecl] = []
        attr_groups: list[AttrGroupDecl] = []
        for child in root.child_elements():
            local = self.expect_xsd(child)
            if local == "annotation":
                continue
            elif local == "element":
                elements.append(self.read_element(child, scope="global"))
            elif local == "complexType":
                types.append(self.read_complex_type(child, named=True))
            elif local == "simpleType":
                types.append(self.read_simple_type(child))
            elif local == "group":
                groups.append(self.read_group(child))
            elif local == "attributeGroup":
                attr_groups.append(self.read_attr_group(child))
            else:
                raise SchemaError(
                    child.source_position, f"unsupported construct xs:{local}"
                )
        model = SchemaModel(
            tuple(elements), tuple(types), tuple(groups), tuple(attr_groups),
            source_id=self.source_id,
        )
        _check_references(model)
        return model

    def is_xsd(self, el: XmlElement) -> bool:
        if el.name.prefix is None:
            return self.default_is_xsd
        return el.name.prefix in self.xsd_prefixes

    def expect_xsd(self, el: XmlElement) -> str:
        if not self.is_xsd(el):
            raise SchemaError(
                el.source_position, f"foreign-namespace element {el.name} in schema"
            )
        return el.name.local

    def attr(self, el: XmlElement, name: str) -> str | None:
        for aname, value in el.attributes:
            if aname.prefix is None and aname.local == name:
                return value
        return None

    def type_ref(self, qname: str, position) -> BuiltinRef | NamedTypeRef:
        if ":" in qname:
            prefix, local = qname.split(":", 1)
            if prefix in self.xsd_prefixes:
                return BuiltinRef(local)
            raise SchemaError(position, f"cross-namespace type reference {qname!r}")
        if self.default_is_xsd and qname in XSD_BUILTINS:
            return BuiltinRef(qname)
        return NamedTypeRef(qname)

    def occurs(self, el: XmlElement) -> tuple[int, int | None]:
        min_s = self.attr(el, "minOccurs")
        max_s = self.attr(el, "maxOccurs")
        try:
            min_o = 1 if min_s is None else int(min_s)
            max_o = 1 if max_s is None else (None if max_s == "unbounded" else int(max_s))
        except ValueError:
            raise SchemaError(el.source_position, "bad occurrence value") from None
        if min_o < 0 or (max_o is not None and max_o < min_o):
            raise SchemaError(el.source_position, "bad occurrence range")
        return min_o, max_o

    def read_element(self, el: XmlElement, scope: str) -> ElementDecl:
        name = self.attr(el, "name")
        if name is None:
            raise SchemaError(el.source_position, "element declaration without a name")
        if scope == "global" and (
            self.attr(el, "minOccurs") is not None or self.attr(el, "maxOccurs") is not None
        ):
            raise SchemaError(
                el.source_position, "occurrence facets are not allowed on global elements"
            )
        type_attr = self.attr(el, "type")
        inline: ComplexType | None = None
        for child in el.child_elements():
            local = self.expect_xsd(child)
            if local == "annotation":
                continue
            elif local == "complexType":
                if type_attr is not None or inline is not None:
                    raise SchemaError(child.source_position, "element has two types")
                inline = self.read_complex_type(child, named=False)
            elif local == "simpleType":
                raise SchemaError(
                    child.source_position, "unsupported construct: anonymous xs:simpleType"
                )
            else:
                raise SchemaError(child.source_position, f"unsupported construct xs:{local}")
        if type_attr is not None:
            etype = self.type_ref(type_attr, el.source_position)
        elif inline is not None:
            etype = inline
        else:
            etype = BuiltinRef("anyType")
        return ElementDecl(name, etype, scope=scope, position=el.source_position)

    def read_particles(
        self, seq: XmlElement
    ) -> tuple[list[Particle], list[str]]:
        particles: list[Particle] = []
        group_refs: list[str] = []
        for child in seq.child_elements():
            local = self.expect_xsd(child)
            if local == "annotation":
                continue
            elif local == "element":
                min_o, max_o = self.occurs(child)
                ref = self.attr(child, "ref")
                if ref is not None:
                    if self.attr(child, "name") is not None:
                        raise SchemaError(
                            child.source_position, "element particle has both ref and name"
                        )
                    particles.append(Particle(ref, None, min_o, max_o))
                else:
                    decl = self.read_element(child, scope="local")
                    particles.append(Particle(None, decl, min_o, max_o))
            elif local == "group":
                ref = self.attr(child, "ref")
                if ref is None:
                    raise SchemaError(child.source_position, "group particle without ref")
                if self.attr(child, "minOccurs") or self.attr(child, "maxOccurs"):
                    raise SchemaError(
                        child.source_position,
                        "occurrence facets on group references are not supported",
                    )
                group_refs.append(ref)
            elif local in ("choice", "all", "any", "sequence"):
                raise SchemaError(
                    child.source_position,
                    f"unsupported construct xs:{local} inside xs:sequence",
                )
            else:
                raise SchemaError(child.source_position, f"unsupported construct xs:{local}")
        return particles, group_refs

    def read_attribute(self, el: XmlElement) -> AttrDecl:
        name = self.attr(el, "name")
        if name is None:
            raise SchemaError(
                el.source_position, "attribute references (ref=) are not supported"
            )
        type_attr = self.attr(el, "type")
        datatype = (
            BuiltinRef("string")
            if type_attr is None
            else self.type_ref(type_attr, el.source_position)
        )
        use = self.attr(el, "use") or "optional"
        if use not in ("optional", "required"):
            raise SchemaError(el.source_position, f"unsupported attribute use {use!r}")
        return AttrDecl(name, datatype, use == "required", position=el.source_position)

    def read_type_body(
        self, el: XmlElement
    ) -> tuple[list[Particle], list[AttrDecl], list[str], list[str]]:
        particles: list[Particle] = []
        attributes: list[AttrDecl] = []
        group_refs: list[str] = []
        attr_group_refs: list[str] = []
        seen_sequence = False
        for child in el.child_elements():
            local = self.expect_xsd(child)
            if local == "annotation":
                continue
            elif local == "sequence":
                if seen_sequence:
                    raise SchemaError(
                        child.source_position, "multiple content models in one type"
                    )
                seen_sequence = True
                particles, seq_groups = self.read_particles(child)
                group_refs.extend(seq_groups)
            elif local == "attribute":
                attributes.append(self.read_attribute(child))
            elif local == "group":
                ref = self.attr(child, "ref")
                if ref is None:
                    raise SchemaError(child.source_position, "group reference without ref")
                group_refs.append(ref)
            elif local == "attributeGroup":
                ref = self.attr(child, "ref")
                if ref is None:
                    raise SchemaError(
                        child.source_position, "attributeGroup reference without ref"
                    )
                attr_group_refs.append(ref)
            elif local in ("choice", "all", "any", "simpleContent"):
                raise SchemaError(child.source_position, f"unsupported construct xs:{local}")
            else:
                raise SchemaError(child.source_position, f"unsupported construct xs:{local}")
        return particles, attributes, group_refs, attr_group_refs

    def read_complex_type(self, el: XmlElement, named: bool) -> ComplexType:
        name = self.attr(el, "name")
        if named and name is None:
            raise SchemaError(el.source_position, "global complexType without a name")
        if not named and name is not None:
            raise SchemaError(el.source_position, "local complexType must be anonymous")
        mixed = (self.attr(el, "mixed") or "false") == "true"

        derivation: tuple[str, str] | None = None
        body = el
        kids = [
            k for k in el.child_elements()
            if not (self.is_xsd(k) and k.name.local == "annotation")
        ]
        if len(kids) == 1 and self.is_xsd(kids[0]) and kids[0].name.local == "complexContent":
            inner = kids[0].child_elements()
            if len(inner) != 1:
                raise SchemaError(kids[0].source_position, "malformed xs:complexContent")
            deriv_el = inner[0]
            kind = self.expect_xsd(deriv_el)
            if kind not in ("extension", "restriction"):
                raise SchemaError(
                    deriv_el.source_position, f"unsupported construct xs:{kind}"
                )
            base = self.attr(deriv_el, "base")
            if base is None:
                raise SchemaError(deriv_el.source_position, f"xs:{kind} without base")
            base_ref = self.type_ref(base, deriv_el.source_position)
            if isinstance(base_ref, BuiltinRef):
                raise SchemaError(
                    deriv_el.source_position, "complexContent base must be a complex type"
                )
            derivation = (kind, base_ref.name)
            body = deriv_el

        particles, attributes, group_refs, attr_group_refs = self.read_type_body(body)
        return ComplexType(
            name=name,
            particles=tuple(particles),
            attributes=tuple(attributes),
            group_refs=tuple(group_refs),
            attr_group_refs=tuple(attr_group_refs),
            mixed=mixed,
            derivation=derivation,
            position=el.source_position,
        )

    def read_simple_type(self, el: XmlElement) -> SimpleType:
        name = self.attr(el, "name")
        if name is None:
            raise SchemaError(el.source_position, "global simpleType without a name")
        restr = None
        for child in el.child_elements():
            local = self.expect_xsd(child)
            if local == "annotation":
                continue
            elif local == "restriction":
                restr = child
            else:
                raise SchemaError(child.source_position, f"unsupported construct xs:{local}")
        if restr is None:
            raise SchemaError(el.source_position, "simpleType without xs:restriction")
        base = self.attr(restr, "base")
        if base is None:
            raise SchemaError(restr.source_position, "xs:restriction without base")
        base_ref = self.type_ref(base, restr.source_position)
        if not isinstance(base_ref, BuiltinRef):
            raise SchemaError(
                restr.source_position, "simpleType restriction base must be built-in"
            )
        # facets inside the restriction carry no structural information here
        return SimpleType(name, base_ref.name, position=el.source_position)

    def read_group(self, el: XmlElement) -> GroupDecl:
        name = self.attr(el, "name")
        if name is None:
            raise SchemaError(el.source_position, "global group without a name")
        particles: list[Particle] = []
        for child in el.child_elements():
            local = self.expect_xsd(child)
            if local == "annotation":
                continue
            elif local == "sequence":
                seq_particles, seq_groups = self.read_particles(child)
                if seq_groups:
                    raise SchemaError(
                        child.source_position, "nested group references are not supported"
                    )
                particles.extend(seq_particles)
            else:
                raise SchemaError(child.source_position, f"unsupported construct xs:{local}")
        return GroupDecl(name, tuple(particles), position=el.source_position)

    def read_attr_group(self, el: XmlElement) -> AttrGroupDecl:
        name = self.attr(el, "name")
        if name is None:
            raise SchemaError(el.source_position, "global attributeGroup without a name")
        attributes: list[AttrDecl] = []
        for child in el.child_elements():
            local = self.expect_xsd(child)
            if local == "annotation":
                continue
            elif local == "attribute":
                attributes.append(self.read_attribute(child))
            else:
                raise SchemaError(child.source_position, f"unsupported construct xs:{local}")
        return AttrGroupDecl(name, tuple(attributes), position=el.source_position)


def read_schema(data: bytes, source_id: str) -> SchemaModel:
    """Parse XSD bytes into a fully resolved SchemaModel."""
    doc = parse_xml(data, source_id)
    return _SchemaReader(doc, source_id).read()


# ---------------------------------------------------------------------------
# writer


def _occurs_attrs(p: Particle) -> str:
    parts = []
    if p.min_occurs != 1:
        parts.append(f' minOccurs="{p.min_occurs}"')
    if p.max_occurs != 1:
        value = "unbounded" if p.max_occurs is None else str(p.max_occurs)
        parts.append(f' maxOccurs="{value}"')
    return "".join(parts)


def serialize_schema(model: SchemaModel) -> str:
    """Write the model as XSD text: xs: prefix, two-space indentation,
    occurrence facets omitted when they equal the defaults."""
    lines: list[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<xs:schema xmlns:xs="{XSD_NS}">',
    ]

    def type_text(ref: BuiltinRef | NamedTypeRef) -> str:
        return f"xs:{ref.name}" if isinstance(ref, BuiltinRef) else ref.name

    def emit_attribute(a: AttrDecl, indent: str):
        use = ' use="required"' if a.required else ""
        lines.append(f'{indent}<xs:attribute name="{a.name}"{use} type="{type_text(a.datatype)}"/>')

    def emit_body(ct: ComplexType, indent: str):
        seq_items = list(ct.particles) + [("group", g) for g in ct.group_refs]
        if seq_items:
            lines.append(f"{indent}<xs:sequence>")
            for item in seq_items:
                if isinstance(item, Particle):
                    if item.ref is not None:
                        lines.append(
                            f'{indent}  <xs:element{_occurs_attrs(item)} ref="{item.ref}"/>'
                        )
                    else:
                        emit_element(item.decl, indent + "  ", _occurs_attrs(item))
                else:
                    lines.append(f'{indent}  <xs:group ref="{item[1]}"/>')
            lines.append(f"{indent}</xs:sequence>")
        for a in ct.attributes:
            emit_attribute(a, indent)
        for g in ct.attr_group_refs:
            lines.append(f'{indent}<xs:attributeGroup ref="{g}"/>')

    def emit_complex_type(ct: ComplexType, indent: str):
        attrs = ""
        if ct.name is not None:
            attrs += f' name="{ct.name}"'
        if ct.mixed:
            attrs += ' mixed="true"'
        empty = not (ct.particles or ct.attributes or ct.group_refs or ct.attr_group_refs)
        if ct.derivation is None and empty:
            lines.append(f"{indent}<xs:complexType{attrs}/>")
            return
        lines.append(f"{indent}<xs:complexType{attrs}>")
        if ct.derivation is not None:
            kind, base = ct.derivation
            lines.append(f"{indent}  <xs:complexContent>")
            lines.append(f'{indent}    <xs:{kind} base="{base}">')
            emit_body(ct, indent + "      ")
            lines.append(f"{indent}    </xs:{kind}>")
            lines.append(f"{indent}  </xs:complexContent>")
        else:
            emit_body(ct, indent + "  ")
        lines.append(f"{indent}</xs:complexType>")

    def emit_element(e: ElementDecl, indent: str, occurs: str = ""):
        if isinstance(e.type, ComplexType):
            lines.append(f'{indent}<xs:element{occurs} name="{e.name}">')
            emit_complex_type(e.type, indent + "  ")
            lines.append(f"{indent}</xs:element>")
        else:
            lines.append(
                f'{indent}<xs:element{occurs} name="{e.name}" type="{type_text(e.type)}"/>'
            )

    for e in model.global_elements:
        emit_element(e, "  ")
    for t in model.global_types:
        if isinstance(t, ComplexType):
            emit_complex_type(t, "  ")
        else:
            lines.append(f'  <xs:simpleType name="{t.name}">')
            lines.append(f'    <xs:restriction base="xs:{t.base}"/>')
            lines.append("  </xs:simpleType>")
    for g in model.element_groups:
        lines.append(f'  <xs:group name="{g.name}">')
        lines.append("    <xs:sequence>")
        for p in g.particles:
            if p.ref is not None:
                lines.append(f'      <xs:element{_occurs_attrs(p)} ref="{p.ref}"/>')
            else:
                emit_element(p.decl, "      ", _occurs_attrs(p))
        lines.append("    </xs:sequence>")
        lines.append("  </xs:group>")
    for ag in model.attribute_groups:
        lines.append(f'  <xs:attributeGroup name="{ag.name}">')
        for a in ag.attributes:
            emit_attribute(a, "    ")
        lines.append("  </xs:attributeGroup>")
    lines.append("</xs:schema>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_ns_decl(name) -> bool:
    return name.prefix == "xmlns" or (name.prefix is None and name.local == "xmlns")


class _Validator:
    def __init__(self, model: SchemaModel):
        self.model = model
        self.violations: list[Violation] = []

    def complain(self, kind: str, path: str, message: str):
        self.violations.append(Violation(kind, path, message))

    def resolve_type(self, ref) -> ComplexType | SimpleType | BuiltinRef:
        if isinstance(ref, NamedTypeRef):
            return self.model.type_named(ref.name)
        return ref

    def lexical_name(self, ref) -> str | None:
        """Built-in local name governing a simple type's lexical space."""
        t = self.resolve_type(ref)
        if isinstance(t, BuiltinRef):
            return None if t.name in ("anyType", "anySimpleType") else t.name
        if isinstance(t, SimpleType):
            return t.base
        return None

    def effective_content(
        self, ct: ComplexType
    ) -> tuple[dict[str, list[Particle]], dict[str, AttrDecl], bool]:
        """Per-name particles and attributes after flattening groups and
        the derivation chain (extension adds to its base)."""
        particles: dict[str, list[Particle]] = {}
        attrs: dict[str, AttrDecl] = {}
        mixed = ct.mixed

        def add_type(t: ComplexType):
            nonlocal mixed
            mixed = mixed or t.mixed
            if t.derivation is not None and t.derivation[0] == "extension":
                add_type(self.model.type_named(t.derivation[1]))
            for p in t.particles:
                particles.setdefault(p.name, []).append(p)
            for g in t.group_refs:
                for p in self.model.group(g).particles:
                    particles.setdefault(p.name, []).append(p)
            for a in t.attributes:
                attrs.setdefault(a.name, a)
            for ag in t.attr_group_refs:
                for a in self.model.attr_group(ag).attributes:
                    attrs.setdefault(a.name, a)

        add_type(ct)
        return particles, attrs, mixed

    def check_simple_value(self, value: str, type_ref, path: str):
        lex = self.lexical_name(type_ref)
        if lex is not None and not lexically_valid(value, lex):
            self.complain("datatype", path, f"value {value!r} is not a valid xs:{lex}")

    def visit(self, instance: XmlElement, type_ref, path: str):
        resolved = self.resolve_type(type_ref)
        if isinstance(resolved, BuiltinRef) and resolved.name == "anyType":
            return
        if isinstance(resolved, (BuiltinRef, SimpleType)):
            for name, _ in instance.attributes:
                if not _is_ns_decl(name):
                    self.complain(
                        "undeclared-attribute", path,
                        f"attribute {name.local!r} not allowed on simple-typed element",
                    )
            for child in instance.child_elements():
                self.complain(
                    "unknown-element", path,
                    f"element {child.name.local!r} not allowed inside simple-typed element",
                )
            self.check_simple_value(text_content(instance), type_ref, path)
            return

        particles, attrs, mixed = self.effective_content(resolved)

        for name, value in instance.attributes:
            if _is_ns_decl(name):
                continue
            decl = attrs.get(name.local)
            if decl is None:
                self.complain(
                    "undeclared-attribute", path, f"undeclared attribute {name.local!r}"
                )
            else:
                self.check_simple_value(value, decl.datatype, f"{path}/@{name.local}")
        for name, decl in attrs.items():
            if decl.required and instance.attribute(name) is None:
                self.complain(
                    "missing-attribute", path, f"required attribute {name!r} is missing"
                )

        if not mixed and any(isinstance(c, str) for c in instance.children):
            self.complain("unexpected-text", path, "text content in non-mixed type")

        counts: dict[str, int] = {}
        ordinals: dict[str, int] = {}
        for child in instance.child_elements():
            counts[child.name.local] = counts.get(child.name.local, 0) + 1
        for name, plist in particles.items():
            n = counts.get(name, 0)
            min_total = sum(p.min_occurs for p in plist)
            max_total = None if any(p.max_occurs is None for p in plist) \
                else sum(p.max_occurs for p in plist)
            if n == 0 and min_total > 0:
                self.complain(
                    "missing-child", path, f"required child {name!r} is missing"
                )
            elif n < min_total:
                self.complain(
                    "occurrence", path,
                    f"child {name!r} occurs {n} times, minimum is {min_total}",
                )
            elif max_total is not None and n > max_total:
                self.complain(
                    "occurrence", path,
                    f"child {name!r} occurs {n} times, maximum is {max_total}",
                )
        for child in instance.child_elements():
            name = child.name.local
            ordinals[name] = ordinals.get(name, 0) + 1
            child_path = f"{path}/{name}[{ordinals[name]}]"
            plist = particles.get(name)
            if plist is None:
                self.complain("unknown-element", child_path, f"unexpected element {name!r}")
                continue
            p = plist[0]
            child_type = self.model.element(p.ref).type if p.ref is not None else p.decl.type
            self.visit(child, child_type, child_path)


def validate(doc: XmlDocument, schema: SchemaModel) -> ValidationReport:
    """Structurally check a document against the schema; an empty report
    means the document conforms (within the supported construct set)."""
    v = _Validator(schema)
    root_decl = schema.element(doc.root.name.local)
    if root_decl is None:
        v.complain(
            "unknown-element", f"/{doc.root.name.local}",
            f"no global element {doc.root.name.local!r}",
        )
    else:
        v.visit(doc.root, root_decl.type, f"/{doc.root.name.local}")
    return ValidationReport(v.violations)
