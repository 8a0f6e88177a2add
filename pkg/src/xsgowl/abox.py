"""Populate OWL individuals from XML instance data.

Every element instance whose declared type maps to a class becomes an
individual of that class; parent-child pairs become object-property
assertions resolved through the mapping trace, simple-typed children,
attributes and mixed text become data assertions. The input document must
already validate against the schema.

Individual names: the id-attribute strategy uses a sanitized `id`
attribute value when the element carries one and falls back to the path
strategy otherwise; the path strategy names every individual by its
root-to-node path with 1-based same-name sibling ordinals
(bibliography_1.biblioentry_1.author_1). Children reached through a group
reference hang off one synthetic individual of the group's class per
instance, mirroring the has<GroupClass> structure of the generated TBox.
"""

from __future__ import annotations

import enum
from dataclasses import replace

from .owlgen import MappingTrace
from .owlmodel import (
    RDFS_LITERAL,
    Individual,
    Iri,
    OntologyModel,
    sanitize_fragment,
)
from .paths import build_path_map
from .xmldoc import XmlDocument, XmlElement, text_content
from .xsdmodel import (
    AttrDecl,
    ComplexType,
    ElementDecl,
    NamedTypeRef,
    Particle,
    SchemaModel,
    validate,
)


class IndividualNaming(enum.Enum):
    ID_ATTRIBUTE = "id-attribute"
    PATH_ORDINAL = "path-ordinal"


class NamingCollision(Exception):
    """Two element instances produced the same individual IRI."""


def _is_ns_decl(name) -> bool:
    return name.prefix == "xmlns" or (name.prefix is None and name.local == "xmlns")


class _Populator:
    def __init__(self, schema: SchemaModel, tbox: OntologyModel,
                 trace: MappingTrace, naming: IndividualNaming):
        self.schema = schema
        self.tbox = tbox
        self.naming = naming
        self.pm = build_path_map(schema)
        self.resolution = trace.resolution
        self.dt_props = {p.iri: p for p in tbox.datatype_properties}
        self.taken: dict[str, tuple[int, int]] = {}

    def resolve_complex(self, type_ref) -> ComplexType | None:
        if isinstance(type_ref, ComplexType):
            return type_ref
        if isinstance(type_ref, NamedTypeRef):
            target = self.schema.type_named(type_ref.name)
            if isinstance(target, ComplexType):
                return target
        return None

    def class_iri(self, ct: ComplexType) -> Iri:
        return self.resolution[self.pm.path(ct)]

    def content_of(self, ct: ComplexType):
        """name -> (particle, via-group name) plus attributes with their
        attribute-group, walking groups and the extension chain."""
        particles: dict[str, tuple[Particle, str | None]] = {}
        attrs: dict[str, tuple[AttrDecl, str | None]] = {}
        mixed_types: list[ComplexType] = []

        def add(t: ComplexType):
            if t.mixed:
                mixed_types.append(t)
            if t.derivation is not None and t.derivation[0] == "extension":
                add(self.schema.type_named(t.derivation[1]))
            for p in t.particles:
                particles.setdefault(p.name, (p, None))
            for g in t.group_refs:
                for p in self.schema.group(g).particles:
                    particles.setdefault(p.name, (p, g))
            for a in t.attributes:
                attrs.setdefault(a.name, (a, None))
            for ag in t.attr_group_refs:
                for a in self.schema.attr_group(ag).attributes:
                    attrs.setdefault(a.name, (a, ag))

        add(ct)
        return particles, attrs, mixed_types

    def allocate(self, instance: XmlElement, path_fragment: str) -> Iri:
        fragment = path_fragment
        if self.naming is IndividualNaming.ID_ATTRIBUTE:
            id_value = instance.attribute("id")
            if id_value is not None:
                fragment = sanitize_fragment(id_value)
        if fragment in self.taken:
            line, col = self.taken[fragment]
            here = instance.source_position
            raise NamingCollision(
                f"individual IRI fragment {fragment!r} produced twice: "
                f"at {line}:{col} and {here[0]}:{here[1]}"
            )
        self.taken[fragment] = instance.source_position
        return Iri(self.tbox.ontology_iri, fragment)

    def data_assertion(self, prop_iri: Iri, value: str):
        rng = self.dt_props[prop_iri].range
        datatype = "" if rng == RDFS_LITERAL else rng
        return (prop_iri, value, datatype)

    def build(self, instance: XmlElement, decl: ElementDecl,
              path_fragment: str) -> tuple[Iri, list[Individual]]:
        ct = self.resolve_complex(decl.type)
        iri = self.allocate(instance, path_fragment)
        particles, attrs, mixed_types = self.content_of(ct)

        object_assertions: list[tuple[Iri, Iri]] = []
        data_assertions: list[tuple[Iri, str, str]] = []
        collected: list[Individual] = []
        # one synthetic member holder per referenced group, created lazily
        synthetics: dict[tuple[str, str], tuple[Iri, list, list]] = {}

        def target_lists(group: str | None, kind: str):
            if group is None:
                return object_assertions, data_assertions
            key = (kind, group)
            if key not in synthetics:
                holder = self.schema.group(group) if kind == "group" \
                    else self.schema.attr_group(group)
                frag = f"{iri.fragment}.{sanitize_fragment(group)}_1"
                if frag in self.taken:
                    line, col = self.taken[frag]
                    raise NamingCollision(
                        f"individual IRI fragment {frag!r} produced twice: "
                        f"at {line}:{col} and {instance.source_position[0]}:"
                        f"{instance.source_position[1]}"
                    )
                self.taken[frag] = instance.source_position
                synth_iri = Iri(self.tbox.ontology_iri, frag)
                synthetics[key] = (synth_iri, [], [])
                tag = "group" if kind == "group" else "attributeGroup"
                ref_path = f"{self.pm.body_path(ct)}/xs:{tag}[{group}]"
                object_assertions.append((self.resolution[ref_path], synth_iri))
            return synthetics[key][1], synthetics[key][2]

        ordinals: dict[str, int] = {}
        for child in instance.child_elements():
            name = child.name.local
            ordinals[name] = ordinals.get(name, 0) + 1
            particle, group = particles[name]
            child_decl = self.schema.element(particle.ref) \
                if particle.ref is not None else particle.decl
            obj_sink, data_sink = target_lists(group, "group")
            prop_iri = self.resolution[self.pm.path(particle)]
            if self.resolve_complex(child_decl.type) is not None:
                child_fragment = f"{path_fragment}.{name}_{ordinals[name]}"
                child_iri, sub = self.build(child, child_decl, child_fragment)
                obj_sink.append((prop_iri, child_iri))
                collected.extend(sub)
            else:
                data_sink.append(self.data_assertion(prop_iri, text_content(child)))

        for name, value in instance.attributes:
            if _is_ns_decl(name):
                continue
            attr, group = attrs[name.local]
            _, data_sink = target_lists(group, "attr-group")
            prop_iri = self.resolution[self.pm.path(attr)]
            data_sink.append(self.data_assertion(prop_iri, value))

        for mt in mixed_types:
            if any(isinstance(c, str) for c in instance.children):
                prop_iri = self.resolution[f"{self.pm.path(mt)}/text()"]
                data_assertions.append(
                    self.data_assertion(prop_iri, text_content(instance))
                )
                break

        for (kind, group), (synth_iri, obj, data) in synthetics.items():
            holder = self.schema.group(group) if kind == "group" \
                else self.schema.attr_group(group)
            collected.append(Individual(
                synth_iri, self.class_iri_of_group(holder),
                tuple(obj), tuple(data),
            ))

        me = Individual(
            iri, self.class_iri(ct),
            tuple(object_assertions), tuple(data_assertions),
        )
        return iri, [me] + collected

    def class_iri_of_group(self, holder) -> Iri:
        return self.resolution[self.pm.path(holder)]


def populate(
    doc: XmlDocument,
    schema: SchemaModel,
    tbox: OntologyModel,
    trace: MappingTrace,
    naming: IndividualNaming = IndividualNaming.ID_ATTRIBUTE,
) -> OntologyModel:
    """TBox plus the individuals read off one validated document."""
    report = validate(doc, schema)
    if not report.ok:
        problems = "; ".join(str(v) for v in report.violations[:3])
        raise ValueError(
            f"document {doc.source_id!r} does not validate against the schema: "
            f"{problems}"
        )
    populator = _Populator(schema, tbox, trace, naming)
    root_decl = schema.element(doc.root.name.local)
    individuals: list[Individual] = []
    if populator.resolve_complex(root_decl.type) is not None:
        _, individuals = populator.build(
            doc.root, root_decl, f"{doc.root.name.local}_1"
        )
    return replace(tbox, individuals=tuple(individuals))


def split_individuals(model: OntologyModel) -> tuple[OntologyModel, OntologyModel]:
    """Separate TBox and ABox documents; the ABox imports the TBox."""
    tbox = replace(model, individuals=())
    abox = OntologyModel(
        ontology_iri=model.ontology_iri + "/abox",
        individuals=model.individuals,
        imports=(model.ontology_iri,),
    )
    return tbox, abox
