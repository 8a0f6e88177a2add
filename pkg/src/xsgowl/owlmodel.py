"""OWL-DL entity model with Turtle and RDF/XML writers.

Models are validated on construction (dangling references or duplicate
fragments raise ValueError), so the writers never have to defend
themselves. Both writers emit the same triples in the same entity order:
ontology header, classes, object properties (with any cardinality
restriction axioms), datatype properties, individuals — each category
sorted alphabetically by IRI fragment, so equal models serialize to
byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .datatypes import lexically_valid

OWL_NS = "http://www.w3.org/2002/07/owl#"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

RDFS_LITERAL = RDFS_NS + "Literal"
XSD_ANYTYPE = XSD_NS + "anyType"


def xsd_iri(local: str) -> str:
    return XSD_NS + local


@dataclass(frozen=True)
class Iri:
    base: str
    fragment: str

    @property
    def full(self) -> str:
        return f"{self.base}#{self.fragment}"


@dataclass(frozen=True)
class OwlClass:
    iri: Iri
    label: str
    subclass_of: Iri | None = None
    origin: str = field(compare=False, default="")


@dataclass(frozen=True)
class ObjectProperty:
    iri: Iri
    domain: tuple[Iri, ...]
    range: Iri
    union_domain: bool = True
    cardinality: tuple[int, int | None] | None = None
    origin: str = field(compare=False, default="")


@dataclass(frozen=True)
class DatatypeProperty:
    iri: Iri
    domain: tuple[Iri, ...]
    range: str  # full datatype IRI
    union_domain: bool = True
    origin: str = field(compare=False, default="")


@dataclass(frozen=True)
class Individual:
    iri: Iri
    class_iri: Iri
    object_assertions: tuple[tuple[Iri, Iri], ...] = ()
    data_assertions: tuple[tuple[Iri, str, str], ...] = ()  # (prop, value, dt iri or "")


@dataclass(frozen=True)
class OntologyModel:
    ontology_iri: str  # base IRI, no fragment
    classes: tuple[OwlClass, ...] = ()
    object_properties: tuple[ObjectProperty, ...] = ()
    datatype_properties: tuple[DatatypeProperty, ...] = ()
    individuals: tuple[Individual, ...] = ()
    imports: tuple[str, ...] = ()
    naming_notes: tuple[str, ...] = field(compare=False, default=())

    def __post_init__(self):
        for name, entities in (
            ("class", self.classes),
            ("object property", self.object_properties),
            ("datatype property", self.datatype_properties),
            ("individual", self.individuals),
        ):
            seen = set()
            for e in entities:
                if e.iri.fragment in seen:
                    raise ValueError(f"duplicate {name} fragment {e.iri.fragment!r}")
                seen.add(e.iri.fragment)
        if self.imports:
            return  # cross-document references resolve in the imported ontology
        class_iris = {c.iri for c in self.classes}
        for c in self.classes:
            if c.subclass_of is not None and c.subclass_of not in class_iris:
                raise ValueError(f"subclass base {c.subclass_of.full} is not declared")
        for p in self.object_properties:
            if p.range not in class_iris:
                raise ValueError(f"range of {p.iri.fragment} is not a declared class")
            for d in p.domain:
                if d not in class_iris:
                    raise ValueError(f"domain of {p.iri.fragment} is not a declared class")
        for p in self.datatype_properties:
            for d in p.domain:
                if d not in class_iris:
                    raise ValueError(f"domain of {p.iri.fragment} is not a declared class")
        obj_props = {p.iri for p in self.object_properties}
        dt_props = {p.iri for p in self.datatype_properties}
        individual_iris = {i.iri for i in self.individuals}
        for ind in self.individuals:
            if ind.class_iri not in class_iris:
                raise ValueError(f"individual {ind.iri.fragment} has undeclared class")
            for prop, target in ind.object_assertions:
                if prop not in obj_props:
                    raise ValueError(f"undeclared object property {prop.fragment}")
                if target not in individual_iris:
                    raise ValueError(f"assertion target {target.fragment} is not declared")
            for prop, value, dt in ind.data_assertions:
                if prop not in dt_props:
                    raise ValueError(f"undeclared datatype property {prop.fragment}")
                if dt.startswith(XSD_NS) and not lexically_valid(value, dt[len(XSD_NS):]):
                    raise ValueError(
                        f"value {value!r} is not lexically valid for {dt}"
                    )


# ---------------------------------------------------------------------------
# naming


def sanitize_fragment(name: str) -> str:
    """Force a name into the NCName production: offending characters
    become underscores, a leading non-letter gets one prepended."""
    cleaned = "".join(
        c if (c.isalpha() or c.isdigit() or c in ".-_") else "_" for c in name
    )
    if not cleaned:
        cleaned = "_"
    if not (cleaned[0].isalpha() or cleaned[0] == "_"):
        cleaned = "_" + cleaned
    return cleaned


class FragmentAllocator:
    """Unique NCName fragments within one entity category, with _2/_3
    suffixes on collisions. Every rename is recorded for the DL report."""

    def __init__(self, category: str):
        self.category = category
        self.taken: set[str] = set()
        self.notes: list[str] = []

    def allocate(self, name: str) -> str:
        fragment = sanitize_fragment(name)
        if fragment != name:
            self.notes.append(
                f"{self.category} name {name!r} sanitized to {fragment!r}"
            )
        if fragment in self.taken:
            n = 2
            while f"{fragment}_{n}" in self.taken:
                n += 1
            self.notes.append(
                f"{self.category} name {fragment!r} already used; "
                f"renamed to {fragment}_{n}"
            )
            fragment = f"{fragment}_{n}"
        self.taken.add(fragment)
        return fragment


# ---------------------------------------------------------------------------
# Turtle


def _turtle_datatype(dt: str) -> str:
    if dt.startswith(XSD_NS):
        return "xsd:" + dt[len(XSD_NS):]
    if dt == RDFS_LITERAL:
        return "rdfs:Literal"
    return f"<{dt}>"


def _turtle_string(s: str) -> str:
    escaped = (
        s.replace("\\", "\\\\").replace('"', '\\"')
        .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
    )
    return f'"{escaped}"'


def _turtle_literal(value: str, dt: str) -> str:
    text = _turtle_string(value)
    return text if not dt else f"{text}^^{_turtle_datatype(dt)}"


def _domain_expr(domain: tuple[Iri, ...], union: bool) -> list[str]:
    """rdfs:domain object expressions; several entries mean several
    domain triples (the intersection reading)."""
    if len(domain) == 1:
        return [f":{domain[0].fragment}"]
    if union:
        members = " ".join(f":{d.fragment}" for d in domain)
        return [f"[ a owl:Class ; owl:unionOf ( {members} ) ]"]
    return [f":{d.fragment}" for d in domain]


def _cardinality_axioms(p: ObjectProperty) -> list[tuple[Iri, str, int]]:
    """(domain class, facet, value) triples to emit as restrictions."""
    if p.cardinality is None:
        return []
    low, high = p.cardinality
    axioms = []
    for d in sorted(p.domain, key=lambda i: i.fragment):
        if low > 0:
            axioms.append((d, "minCardinality", low))
        if high is not None:
            axioms.append((d, "maxCardinality", high))
    return axioms


def _entity_base(o: OntologyModel) -> str:
    """Base IRI the ':' prefix binds to; differs from the ontology IRI in
    a split ABox document, whose entities live in the imported TBox."""
    for group in (o.classes, o.object_properties, o.datatype_properties, o.individuals):
        if group:
            return group[0].iri.base
    return o.ontology_iri


def serialize_turtle(o: OntologyModel) -> str:
    base = o.ontology_iri
    out = [
        f"@prefix owl: <{OWL_NS}> .",
        f"@prefix rdf: <{RDF_NS}> .",
        f"@prefix rdfs: <{RDFS_NS}> .",
        f"@prefix xsd: <{XSD_NS}> .",
        f"@prefix : <{_entity_base(o)}#> .",
        "",
    ]
    if o.imports:
        out.append(f"<{base}> a owl:Ontology ;")
        for i, imp in enumerate(o.imports):
            sep = " ." if i == len(o.imports) - 1 else " ;"
            out.append(f"    owl:imports <{imp}>{sep}")
    else:
        out.append(f"<{base}> a owl:Ontology .")
    out.append("")

    for c in sorted(o.classes, key=lambda c: c.iri.fragment):
        lines = [f":{c.iri.fragment} a owl:Class ;"]
        if c.subclass_of is not None:
            lines.append(f"    rdfs:subClassOf :{c.subclass_of.fragment} ;")
        lines.append(f"    rdfs:label {_turtle_string(c.label)} .")
        out.extend(lines)
        out.append("")

    for p in sorted(o.object_properties, key=lambda p: p.iri.fragment):
        out.append(f":{p.iri.fragment} a owl:ObjectProperty ;")
        for expr in _domain_expr(p.domain, p.union_domain):
            out.append(f"    rdfs:domain {expr} ;")
        out.append(f"    rdfs:range :{p.range.fragment} .")
        for cls, facet, value in _cardinality_axioms(p):
            out.append(
                f":{cls.fragment} rdfs:subClassOf [ a owl:Restriction ; "
                f"owl:onProperty :{p.iri.fragment} ; "
                f'owl:{facet} "{value}"^^xsd:nonNegativeInteger ] .'
            )
        out.append("")

    for p in sorted(o.datatype_properties, key=lambda p: p.iri.fragment):
        out.append(f":{p.iri.fragment} a owl:DatatypeProperty ;")
        for expr in _domain_expr(p.domain, p.union_domain):
            out.append(f"    rdfs:domain {expr} ;")
        out.append(f"    rdfs:range {_turtle_datatype(p.range)} .")
        out.append("")

    for ind in sorted(o.individuals, key=lambda i: i.iri.fragment):
        out.append(
            f":{ind.iri.fragment} a owl:NamedIndividual , :{ind.class_iri.fragment}"
        )
        statements = []
        for prop, target in sorted(
            ind.object_assertions, key=lambda a: (a[0].fragment, a[1].fragment)
        ):
            statements.append(f"    :{prop.fragment} :{target.fragment}")
        for prop, value, dt in sorted(
            ind.data_assertions, key=lambda a: (a[0].fragment, a[1])
        ):
            statements.append(f"    :{prop.fragment} {_turtle_literal(value, dt)}")
        for s in statements:
            out[-1] += " ;"
            out.append(s)
        out[-1] += " ."
        out.append("")

    while out and out[-1] == "":
        out.pop()
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# RDF/XML


def _xml_escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _xml_attr(s: str) -> str:
    return _xml_escape(s).replace('"', "&quot;")


def serialize_rdfxml(o: OntologyModel) -> str:
    base = o.ontology_iri
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<rdf:RDF xmlns:owl="{OWL_NS}"',
        f'         xmlns:rdf="{RDF_NS}"',
        f'         xmlns:rdfs="{RDFS_NS}"',
        f'         xmlns:xsd="{XSD_NS}"',
        f'         xmlns:ont="{_xml_attr(_entity_base(o) + "#")}">',
    ]

    def about(iri: Iri) -> str:
        return _xml_attr(iri.full)

    if o.imports:
        out.append(f'  <owl:Ontology rdf:about="{_xml_attr(base)}">')
        for imp in o.imports:
            out.append(f'    <owl:imports rdf:resource="{_xml_attr(imp)}"/>')
        out.append("  </owl:Ontology>")
    else:
        out.append(f'  <owl:Ontology rdf:about="{_xml_attr(base)}"/>')

    def domain_xml(domain: tuple[Iri, ...], union: bool, indent: str) -> list[str]:
        if len(domain) == 1:
            return [f'{indent}<rdfs:domain rdf:resource="{about(domain[0])}"/>']
        if union:
            lines = [
                f"{indent}<rdfs:domain>",
                f"{indent}  <owl:Class>",
                f'{indent}    <owl:unionOf rdf:parseType="Collection">',
            ]
            for d in domain:
                lines.append(f'{indent}      <rdf:Description rdf:about="{about(d)}"/>')
            lines.append(f"{indent}    </owl:unionOf>")
            lines.append(f"{indent}  </owl:Class>")
            lines.append(f"{indent}</rdfs:domain>")
            return lines
        return [f'{indent}<rdfs:domain rdf:resource="{about(d)}"/>' for d in domain]

    for c in sorted(o.classes, key=lambda c: c.iri.fragment):
        out.append(f'  <owl:Class rdf:about="{about(c.iri)}">')
        if c.subclass_of is not None:
            out.append(
                f'    <rdfs:subClassOf rdf:resource="{about(c.subclass_of)}"/>'
            )
        out.append(f"    <rdfs:label>{_xml_escape(c.label)}</rdfs:label>")
        out.append("  </owl:Class>")

    for p in sorted(o.object_properties, key=lambda p: p.iri.fragment):
        out.append(f'  <owl:ObjectProperty rdf:about="{about(p.iri)}">')
        out.extend(domain_xml(p.domain, p.union_domain, "    "))
        out.append(f'    <rdfs:range rdf:resource="{about(p.range)}"/>')
        out.append("  </owl:ObjectProperty>")
        for cls, facet, value in _cardinality_axioms(p):
            out.append(f'  <rdf:Description rdf:about="{about(cls)}">')
            out.append("    <rdfs:subClassOf>")
            out.append("      <owl:Restriction>")
            out.append(f'        <owl:onProperty rdf:resource="{about(p.iri)}"/>')
            out.append(
                f'        <owl:{facet} rdf:datatype="{XSD_NS}nonNegativeInteger">'
                f"{value}</owl:{facet}>"
            )
            out.append("      </owl:Restriction>")
            out.append("    </rdfs:subClassOf>")
            out.append("  </rdf:Description>")

    for p in sorted(o.datatype_properties, key=lambda p: p.iri.fragment):
        out.append(f'  <owl:DatatypeProperty rdf:about="{about(p.iri)}">')
        out.extend(domain_xml(p.domain, p.union_domain, "    "))
        out.append(f'    <rdfs:range rdf:resource="{_xml_attr(p.range)}"/>')
        out.append("  </owl:DatatypeProperty>")

    for ind in sorted(o.individuals, key=lambda i: i.iri.fragment):
        out.append(f'  <owl:NamedIndividual rdf:about="{about(ind.iri)}">')
        out.append(f'    <rdf:type rdf:resource="{about(ind.class_iri)}"/>')
        for prop, target in sorted(
            ind.object_assertions, key=lambda a: (a[0].fragment, a[1].fragment)
        ):
            out.append(
                f'    <ont:{prop.fragment} rdf:resource="{about(target)}"/>'
            )
        for prop, value, dt in sorted(
            ind.data_assertions, key=lambda a: (a[0].fragment, a[1])
        ):
            if dt:
                out.append(
                    f'    <ont:{prop.fragment} rdf:datatype="{_xml_attr(dt)}">'
                    f"{_xml_escape(value)}</ont:{prop.fragment}>"
                )
            else:
                out.append(
                    f"    <ont:{prop.fragment}>{_xml_escape(value)}"
                    f"</ont:{prop.fragment}>"
                )
        out.append("  </owl:NamedIndividual>")

    out.append("</rdf:RDF>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# profile check


def check_dl_profile(o: OntologyModel) -> list[str]:
    """Warnings for constructs that stretch OWL-DL: xsd:anyType ranges,
    multi-domain properties read as intersections, and names the
    generator had to rewrite."""
    warnings: list[str] = []
    for p in o.datatype_properties:
        if p.range == XSD_ANYTYPE:
            warnings.append(
                f"datatype property '{p.iri.fragment}' has range xsd:anyType, "
                f"which is not an OWL-DL datatype"
            )
    for p in list(o.object_properties) + list(o.datatype_properties):
        if len(p.domain) > 1 and not p.union_domain:
            warnings.append(
                f"property '{p.iri.fragment}' has {len(p.domain)} domain axioms; "
                f"OWL reads them as an intersection, which may be empty"
            )
    warnings.extend(o.naming_notes)
    return warnings
