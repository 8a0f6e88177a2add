"""Schema-to-ontology mapping rules.

Classes come from complex types and element/attribute groups: a named
type keeps its name, an anonymous type takes the name of its surrounding
element, clashes get _2/_3 suffixes in document order. Extension and
restriction both become subclass axioms. An element whose type maps to a
class becomes an object property has<RangeClass> from the containing
class; simple-typed elements and attributes become datatype properties
named by their local name, ranging over the primitive datatype —
xsd:anyType when the simple type is schema-defined (rdfs:Literal instead
under strict_dl). Mixed types additionally get hasTextContent. Group
references attach as has<GroupClass> object properties.

A property holding one name across several containing classes is merged
into a single property with a union domain by default; with
union_domains=False each (domain, name) pair keeps its own property,
fragment <DomainClass>.<name>.

Every generated entity gets exactly one bridge record linking it back to
the schema component that produced it (first contributor wins for merged
properties); subclass axioms get one bridge each on top.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .datatypes import LATTICE_TYPES, join_datatype
from .owlmodel import (
    RDFS_LITERAL,
    XSD_ANYTYPE,
    FragmentAllocator,
    Iri,
    ObjectProperty,
    DatatypeProperty,
    OntologyModel,
    OwlClass,
    sanitize_fragment,
    xsd_iri,
)
from .paths import build_path_map
from .xsdmodel import AttrDecl, ComplexType, ElementDecl, NamedTypeRef, SchemaModel
from .xsg import (
    ATTRIBUTE,
    ATTRIBUTE_GROUP,
    COMPLEX_TYPE,
    EDGE_ELEMENT_TYPE,
    EDGE_MEMBER,
    ELEMENT,
    ELEMENT_GROUP,
    SchemaGraph,
)

logger = logging.getLogger("xsgowl.owlgen")

RULE_CLASS_GLOBAL_TYPE = "CLASS_GLOBAL_TYPE"
RULE_CLASS_ANON_TYPE = "CLASS_ANON_TYPE"
RULE_CLASS_GROUP = "CLASS_GROUP"
RULE_SUBCLASS_EXT = "SUBCLASS_EXT"
RULE_SUBCLASS_RESTR = "SUBCLASS_RESTR"
RULE_OBJPROP = "OBJPROP"
RULE_DTPROP_ELEMENT = "DTPROP_ELEMENT"
RULE_DTPROP_ATTR = "DTPROP_ATTR"
RULE_DTPROP_MIXED_TEXT = "DTPROP_MIXED_TEXT"
RULE_DEFINED_SIMPLE_ANYTYPE = "DEFINED_SIMPLE_ANYTYPE"

KIND_CLASS = "class"
KIND_SUBCLASS = "subclass-axiom"
KIND_OBJECT_PROPERTY = "object-property"
KIND_DATATYPE_PROPERTY = "datatype-property"


@dataclass(frozen=True)
class Bridge:
    schema_path: str
    entity_kind: str
    rule_id: str
    iri: Iri


@dataclass(frozen=True)
class MappingTrace:
    bridges: tuple[Bridge, ...]
    #: every contributing schema path -> generated IRI; a merged property
    #: has one bridge record (first origin) but several entries here
    resolution: dict[str, Iri] = field(compare=False, default_factory=dict)

    def by_path(self) -> dict[str, Bridge]:
        return {b.schema_path: b for b in self.bridges}

    def resolve(self, schema_path: str) -> Iri:
        return self.resolution[schema_path]


@dataclass(frozen=True)
class GenOptions:
    base_iri: str = "http://example.org/onto"
    emit_cardinality: bool = False
    union_domains: bool = True
    strict_dl: bool = False


def write_trace(t: MappingTrace) -> str:
    """Line-oriented TSV: schema-path, entity kind, rule id, IRI."""
    if not t.bridges:
        return ""
    return "\n".join(
        f"{b.schema_path}\t{b.entity_kind}\t{b.rule_id}\t{b.iri.full}"
        for b in t.bridges
    ) + "\n"


class _PropRecord:
    __slots__ = ("name", "domains", "ranges", "occurs", "paths", "rule")

    def __init__(self, name, domain, rng, occurs, path, rule):
        self.name = name
        self.domains = [domain]
        self.ranges = [rng]
        self.occurs = [occurs]
        self.paths = [path]  # first entry is the bridge's origin
        self.rule = rule

    def add(self, domain, rng, occurs, path):
        if domain not in self.domains:
            self.domains.append(domain)
        self.ranges.append(rng)
        self.occurs.append(occurs)
        self.paths.append(path)


def _join_ranges(ranges: list[str]) -> str:
    out = ranges[0]
    for r in ranges[1:]:
        if r == out:
            continue
        if XSD_ANYTYPE in (r, out):
            out = XSD_ANYTYPE
        elif RDFS_LITERAL in (r, out):
            out = RDFS_LITERAL
        else:
            a, b = out.rsplit("#", 1)[1], r.rsplit("#", 1)[1]
            if a in LATTICE_TYPES and b in LATTICE_TYPES:
                out = xsd_iri(join_datatype(a, b))
            else:
                out = xsd_iri("string")
    return out


def _join_occurs(occurs: list) -> tuple[int, int | None] | None:
    """Loosest bounds over all contributing particles; None when no
    restriction would ever be emitted."""
    known = [o for o in occurs if o is not None]
    if not known:
        return None
    low = min(o[0] for o in known)
    high = None if any(o[1] is None for o in known) else max(o[1] for o in known)
    if low == 0 and high is None:
        return None
    return low, high


class _Generator:
    def __init__(self, schema: SchemaModel, graph: SchemaGraph, opts: GenOptions):
        self.schema = schema
        self.graph = graph
        self.opts = opts
        self.pm = build_path_map(schema)
        self.class_iri: dict[int, Iri] = {}  # id(type/group component) -> Iri
        self.notes: list[str] = []

    def iri(self, fragment: str) -> Iri:
        return Iri(self.opts.base_iri, fragment)

    def type_vertices(self):
        return [
            v for v in self.graph.vertices
            if v.kind in (COMPLEX_TYPE, ELEMENT_GROUP, ATTRIBUTE_GROUP)
        ]

    def surrounding_element(self, type_vertex) -> str:
        for e in self.graph.edges:
            if e.kind == EDGE_ELEMENT_TYPE and e.dst == type_vertex.id:
                src = self.graph.vertices[e.src]
                return src.label
        raise AssertionError(f"anonymous type vertex {type_vertex.id} has no element")

    def make_classes(self) -> tuple[list[OwlClass], list[Bridge]]:
        alloc = FragmentAllocator("class")
        records = []  # (component, label, iri, rule, path)
        for v in self.type_vertices():
            comp = v.schema_ref
            if v.kind == COMPLEX_TYPE:
                if comp.name is not None:
                    label, rule = comp.name, RULE_CLASS_GLOBAL_TYPE
                else:
                    label, rule = self.surrounding_element(v), RULE_CLASS_ANON_TYPE
            else:
                label, rule = comp.name, RULE_CLASS_GROUP
            iri = self.iri(alloc.allocate(label))
            self.class_iri[id(comp)] = iri
            records.append((comp, label, iri, rule, self.pm.path(comp)))
        self.notes.extend(alloc.notes)

        classes: list[OwlClass] = []
        subclass_bridges: list[Bridge] = []
        class_bridges: list[Bridge] = []
        for comp, label, iri, rule, path in records:
            subclass_of = None
            if isinstance(comp, ComplexType) and comp.derivation is not None:
                kind, base_name = comp.derivation
                base = self.schema.type_named(base_name)
                subclass_of = self.class_iri[id(base)]
                subclass_bridges.append(Bridge(
                    f"{path}/xs:complexContent/xs:{kind}",
                    KIND_SUBCLASS,
                    RULE_SUBCLASS_EXT if kind == "extension" else RULE_SUBCLASS_RESTR,
                    iri,
                ))
            classes.append(OwlClass(iri, label, subclass_of, origin=path))
            class_bridges.append(Bridge(path, KIND_CLASS, rule, iri))
        return classes, class_bridges + subclass_bridges

    def element_range(self, decl: ElementDecl):
        """(class Iri, None) for class-valued elements, or
        (None, (datatype iri, rule)) for literal-valued ones."""
        etype = decl.type
        if isinstance(etype, ComplexType):
            return self.class_iri[id(etype)], None
        if isinstance(etype, NamedTypeRef):
            target = self.schema.type_named(etype.name)
            if isinstance(target, ComplexType):
                return self.class_iri[id(target)], None
            return None, (self.defined_simple_range(), RULE_DEFINED_SIMPLE_ANYTYPE)
        return None, (self.builtin_range(etype.name), RULE_DTPROP_ELEMENT)

    def defined_simple_range(self) -> str:
        return RDFS_LITERAL if self.opts.strict_dl else XSD_ANYTYPE

    def builtin_range(self, local: str) -> str:
        if local == "anyType" and self.opts.strict_dl:
            return RDFS_LITERAL
        return xsd_iri(local)

    def attr_range(self, a: AttrDecl):
        if isinstance(a.datatype, NamedTypeRef):
            return self.defined_simple_range(), RULE_DEFINED_SIMPLE_ANYTYPE
        return self.builtin_range(a.datatype.name), RULE_DTPROP_ATTR

    def dt_name(self, raw: str) -> str:
        fragment = sanitize_fragment(raw)
        if fragment != raw:
            note = f"datatype property name {raw!r} sanitized to {fragment!r}"
            if note not in self.notes:
                self.notes.append(note)
        return fragment

    def collect_properties(self):
        union = self.opts.union_domains
        obj_records: dict = {}
        dt_records: dict = {}

        def record(records: dict, name: str, domain: Iri, rng, occurs, path, rule):
            key = name if union else (domain.fragment, name)
            existing = records.get(key)
            if existing is None:
                records[key] = _PropRecord(name, domain, rng, occurs, path, rule)
            else:
                existing.add(domain, rng, occurs, path)

        for v in self.type_vertices():
            comp = v.schema_ref
            domain = self.class_iri[id(comp)]
            for e in self.graph.out_edges(v.id):
                if e.kind != EDGE_MEMBER:
                    continue
                dst = self.graph.vertices[e.dst]
                if dst.kind == ELEMENT:
                    decl = dst.schema_ref
                    class_range, dt_range = self.element_range(decl)
                    if class_range is not None:
                        record(
                            obj_records, f"has{class_range.fragment}", domain,
                            class_range, e.occurs, self.pm.path(e.schema_ref),
                            RULE_OBJPROP,
                        )
                    else:
                        rng, rule = dt_range
                        record(
                            dt_records, self.dt_name(decl.name), domain,
                            rng, None, self.pm.path(e.schema_ref), rule,
                        )
                elif dst.kind == ATTRIBUTE:
                    a = dst.schema_ref
                    rng, rule = self.attr_range(a)
                    record(
                        dt_records, self.dt_name(a.name), domain,
                        rng, None, self.pm.path(a), rule,
                    )
                elif dst.kind in (ELEMENT_GROUP, ATTRIBUTE_GROUP):
                    group_class = self.class_iri[id(dst.schema_ref)]
                    tag = "group" if dst.kind == ELEMENT_GROUP else "attributeGroup"
                    record(
                        obj_records, f"has{group_class.fragment}", domain,
                        group_class, None,
                        f"{self.pm.body_path(comp)}/xs:{tag}[{e.schema_ref}]",
                        RULE_OBJPROP,
                    )
            if isinstance(comp, ComplexType) and comp.mixed:
                record(
                    dt_records, "hasTextContent", domain, xsd_iri("string"),
                    None, f"{self.pm.path(comp)}/text()", RULE_DTPROP_MIXED_TEXT,
                )
        return obj_records, dt_records

    def finish_fragment(self, records: dict, key, rec: _PropRecord) -> str:
        if self.opts.union_domains:
            return rec.name
        clashing = sum(1 for r in records.values() if r.name == rec.name)
        if clashing > 1:
            return f"{rec.domains[0].fragment}.{rec.name}"
        return rec.name

    def generate(self) -> tuple[OntologyModel, MappingTrace]:
        classes, bridges = self.make_classes()
        if not classes:
            logger.warning(
                "schema %r has no complex types or groups; ontology has no classes",
                self.schema.source_id,
            )
        obj_records, dt_records = self.collect_properties()
        resolution: dict[str, Iri] = {b.schema_path: b.iri for b in bridges}

        object_properties: list[ObjectProperty] = []
        for key, rec in obj_records.items():
            fragment = self.finish_fragment(obj_records, key, rec)
            cardinality = _join_occurs(rec.occurs) if self.opts.emit_cardinality else None
            prop = ObjectProperty(
                iri=self.iri(fragment),
                domain=tuple(sorted(rec.domains, key=lambda i: i.fragment)),
                range=rec.ranges[0],
                cardinality=cardinality,
                origin=rec.paths[0],
            )
            object_properties.append(prop)
            bridges.append(Bridge(rec.paths[0], KIND_OBJECT_PROPERTY, rec.rule, prop.iri))
            resolution.update((p, prop.iri) for p in rec.paths)

        datatype_properties: list[DatatypeProperty] = []
        for key, rec in dt_records.items():
            fragment = self.finish_fragment(dt_records, key, rec)
            prop = DatatypeProperty(
                iri=self.iri(fragment),
                domain=tuple(sorted(rec.domains, key=lambda i: i.fragment)),
                range=_join_ranges(rec.ranges),
                origin=rec.paths[0],
            )
            datatype_properties.append(prop)
            bridges.append(Bridge(rec.paths[0], KIND_DATATYPE_PROPERTY, rec.rule, prop.iri))
            resolution.update((p, prop.iri) for p in rec.paths)

        model = OntologyModel(
            ontology_iri=self.opts.base_iri,
            classes=tuple(classes),
            object_properties=tuple(object_properties),
            datatype_properties=tuple(datatype_properties),
            naming_notes=tuple(self.notes),
        )
        return model, MappingTrace(tuple(bridges), resolution)


def generate_tbox(
    schema: SchemaModel, graph: SchemaGraph, opts: GenOptions | None = None
) -> tuple[OntologyModel, MappingTrace]:
    """Apply the mapping rules to a schema and its graph."""
    return _Generator(schema, graph, opts or GenOptions()).generate()
