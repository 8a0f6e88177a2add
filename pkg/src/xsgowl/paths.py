"""Stable XPath-like addresses for schema components.

Both the ontology generator (bridge records) and instance population
(looking bridges back up) need to agree on one address per schema
component, so the walk lives here. Addresses are keyed by object identity
within one SchemaModel instance.
"""

from __future__ import annotations

from .xsdmodel import ComplexType, ElementDecl, SchemaModel, SimpleType


class PathMap:
    def __init__(self):
        self._paths: dict[int, str] = {}
        self._bodies: dict[int, str] = {}

    def path(self, component) -> str:
        return self._paths[id(component)]

    def body_path(self, ct: ComplexType) -> str:
        """Path of the type's own content model, including the
        complexContent segment for derived types."""
        return self._bodies[id(ct)]

    def _add(self, component, path: str):
        self._paths.setdefault(id(component), path)


def build_path_map(schema: SchemaModel) -> PathMap:
    pm = PathMap()

    def walk_type(ct: ComplexType, path: str):
        pm._add(ct, path)
        body = path
        if ct.derivation is not None:
            body = f"{path}/xs:complexContent/xs:{ct.derivation[0]}"
        pm._bodies.setdefault(id(ct), body)
        for p in ct.particles:
            ppath = f"{body}/xs:sequence/xs:element[{p.name}]"
            pm._add(p, ppath)
            if p.decl is not None:
                walk_element(p.decl, ppath)
        for a in ct.attributes:
            pm._add(a, f"{body}/xs:attribute[{a.name}]")

    def walk_element(decl: ElementDecl, path: str):
        pm._add(decl, path)
        if isinstance(decl.type, ComplexType):
            walk_type(decl.type, f"{path}/xs:complexType")

    for e in schema.global_elements:
        walk_element(e, f"/xs:schema/xs:element[{e.name}]")
    for t in schema.global_types:
        if isinstance(t, ComplexType):
            walk_type(t, f"/xs:schema/xs:complexType[{t.name}]")
        elif isinstance(t, SimpleType):
            pm._add(t, f"/xs:schema/xs:simpleType[{t.name}]")
    for g in schema.element_groups:
        gpath = f"/xs:schema/xs:group[{g.name}]"
        pm._add(g, gpath)
        for p in g.particles:
            ppath = f"{gpath}/xs:sequence/xs:element[{p.name}]"
            pm._add(p, ppath)
            if p.decl is not None:
                walk_element(p.decl, ppath)
    for ag in schema.attribute_groups:
        agpath = f"/xs:schema/xs:attributeGroup[{ag.name}]"
        pm._add(ag, agpath)
        for a in ag.attributes:
            pm._add(a, f"{agpath}/xs:attribute[{a.name}]")
    return pm
