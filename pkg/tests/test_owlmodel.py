import pytest

from xsgowl.owlmodel import (
    RDFS_LITERAL,
    XSD_ANYTYPE,
    FragmentAllocator,
    Individual,
    Iri,
    ObjectProperty,
    DatatypeProperty,
    OntologyModel,
    OwlClass,
    check_dl_profile,
    sanitize_fragment,
    serialize_rdfxml,
    serialize_turtle,
    xsd_iri,
)
from triples import parse_rdfxml, parse_turtle

BASE = "http://example.org/onto/test"


def iri(frag: str) -> Iri:
    return Iri(BASE, frag)


def small_model(**overrides) -> OntologyModel:
    classes = (
        OwlClass(iri("author"), "author"),
        OwlClass(iri("biblioentry"), "biblioentry"),
        OwlClass(iri("bibliography"), "bibliography"),
    )
    fields = dict(
        ontology_iri=BASE,
        classes=classes,
        object_properties=(
            ObjectProperty(iri("hasauthor"), (iri("biblioentry"),), iri("author")),
        ),
        datatype_properties=(
            DatatypeProperty(
                iri("id"), (iri("bibliography"), iri("biblioentry")), xsd_iri("NCName")
            ),
        ),
    )
    fields.update(overrides)
    return OntologyModel(**fields)


def test_empty_ontology_turtle():
    ttl = serialize_turtle(OntologyModel(ontology_iri=BASE))
    triples = parse_turtle(ttl)
    assert triples == {(BASE, "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
                        "http://www.w3.org/2002/07/owl#Ontology")}


def test_empty_ontology_rdfxml():
    xml = serialize_rdfxml(OntologyModel(ontology_iri=BASE))
    assert parse_rdfxml(xml) == parse_turtle(serialize_turtle(OntologyModel(ontology_iri=BASE)))


def test_serializations_agree_on_model():
    model = small_model()
    assert parse_turtle(serialize_turtle(model)) == parse_rdfxml(serialize_rdfxml(model))


def test_union_domain_expression():
    ttl = serialize_turtle(small_model())
    assert "owl:unionOf ( :bibliography :biblioentry )" in ttl


def test_multi_domain_without_union_is_two_triples():
    model = small_model(datatype_properties=(
        DatatypeProperty(iri("id"), (iri("bibliography"), iri("biblioentry")),
                         xsd_iri("NCName"), union_domain=False),
    ))
    triples = parse_turtle(serialize_turtle(model))
    domains = {o for s, p, o in triples
               if p == "http://www.w3.org/2000/01/rdf-schema#domain"}
    assert domains == {iri("bibliography").full, iri("biblioentry").full}
    assert parse_rdfxml(serialize_rdfxml(model)) == triples


def test_cardinality_restriction_axioms():
    model = small_model(object_properties=(
        ObjectProperty(iri("hasauthor"), (iri("biblioentry"),), iri("author"),
                       cardinality=(1, 1)),
    ))
    ttl = serialize_turtle(model)
    assert ttl.count("owl:Restriction") == 2
    assert 'owl:minCardinality "1"^^xsd:nonNegativeInteger' in ttl
    assert 'owl:maxCardinality "1"^^xsd:nonNegativeInteger' in ttl
    assert parse_turtle(ttl) == parse_rdfxml(serialize_rdfxml(model))


def test_individuals_serialize_and_agree():
    model = small_model(individuals=(
        Individual(
            iri("FHIW13C-1234"), iri("biblioentry"),
            object_assertions=((iri("hasauthor"), iri("a1")),),
            data_assertions=((iri("id"), "FHIW13C-1234", xsd_iri("NCName")),),
        ),
        Individual(iri("a1"), iri("author")),
    ))
    ttl = serialize_turtle(model)
    triples = parse_turtle(ttl)
    assert (iri("FHIW13C-1234").full, BASE + "#hasauthor", iri("a1").full) in triples
    assert (iri("FHIW13C-1234").full, BASE + "#id",
            ("lit", "FHIW13C-1234", xsd_iri("NCName"))) in triples
    assert triples == parse_rdfxml(serialize_rdfxml(model))


def test_determinism():
    model = small_model()
    assert serialize_turtle(model) == serialize_turtle(small_model())
    assert serialize_rdfxml(model) == serialize_rdfxml(small_model())


def test_entities_sorted_by_fragment():
    ttl = serialize_turtle(small_model())
    assert ttl.index(":author a owl:Class") < ttl.index(":biblioentry a owl:Class") \
        < ttl.index(":bibliography a owl:Class")


def test_string_escaping_round_trips():
    model = small_model(
        datatype_properties=(
            DatatypeProperty(iri("note"), (iri("author"),), xsd_iri("string")),
        ),
        individuals=(
            Individual(iri("x"), iri("author"), data_assertions=(
                (iri("note"), 'quote " backslash \\ newline\n<tag>&', xsd_iri("string")),
            )),
        ),
    )
    turtle_triples = parse_turtle(serialize_turtle(model))
    xml_triples = parse_rdfxml(serialize_rdfxml(model))
    assert turtle_triples == xml_triples


def test_referential_closure_enforced():
    with pytest.raises(ValueError):
        OntologyModel(
            ontology_iri=BASE,
            object_properties=(
                ObjectProperty(iri("hasx"), (iri("ghost"),), iri("ghost")),
            ),
        )
    with pytest.raises(ValueError, match="duplicate"):
        OntologyModel(
            ontology_iri=BASE,
            classes=(OwlClass(iri("a"), "a"), OwlClass(iri("a"), "a")),
        )


def test_invalid_literal_rejected():
    with pytest.raises(ValueError, match="lexically"):
        small_model(individuals=(
            Individual(iri("x"), iri("author"), data_assertions=(
                (iri("id"), "not an ncname!", xsd_iri("NCName")),
            )),
        ))


def test_subclass_axiom_serialized():
    model = small_model(classes=(
        OwlClass(iri("author"), "author", subclass_of=iri("bibliography")),
        OwlClass(iri("biblioentry"), "biblioentry"),
        OwlClass(iri("bibliography"), "bibliography"),
    ))
    triples = parse_turtle(serialize_turtle(model))
    assert (iri("author").full, "http://www.w3.org/2000/01/rdf-schema#subClassOf",
            iri("bibliography").full) in triples
    assert triples == parse_rdfxml(serialize_rdfxml(model))


def test_check_dl_profile_anytype():
    model = small_model(datatype_properties=(
        DatatypeProperty(iri("isbn"), (iri("author"),), XSD_ANYTYPE),
    ))
    warnings = check_dl_profile(model)
    assert len(warnings) == 1 and "isbn" in warnings[0] and "anyType" in warnings[0]


def test_check_dl_profile_intersection_risk():
    model = small_model(datatype_properties=(
        DatatypeProperty(iri("id"), (iri("bibliography"), iri("biblioentry")),
                         xsd_iri("NCName"), union_domain=False),
    ))
    warnings = check_dl_profile(model)
    assert len(warnings) == 1 and "intersection" in warnings[0]


def test_check_dl_profile_clean():
    assert check_dl_profile(small_model()) == []
    assert check_dl_profile(OntologyModel(ontology_iri=BASE)) == []


def test_rdfs_literal_range_plain_literals():
    model = small_model(
        datatype_properties=(
            DatatypeProperty(iri("any"), (iri("author"),), RDFS_LITERAL),
        ),
        individuals=(
            Individual(iri("x"), iri("author"),
                       data_assertions=((iri("any"), "free text", ""),)),
        ),
    )
    ttl = serialize_turtle(model)
    assert 'rdfs:range rdfs:Literal' in ttl
    assert '"free text" .' in ttl or '"free text" ;' in ttl
    assert parse_turtle(ttl) == parse_rdfxml(serialize_rdfxml(model))


def test_referential_closure_of_output():
    # everything the writers mention under the ontology base is declared
    model = small_model()
    triples = parse_turtle(serialize_turtle(model))
    declared = {s for s, p, o in triples
                if p == "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
                and isinstance(s, str)}

    def mentioned(term, acc):
        if isinstance(term, str) and term.startswith(BASE + "#"):
            acc.add(term)
        elif isinstance(term, tuple) and term[0] == "bnode":
            for _, o in term[1]:
                mentioned(o, acc)
        elif isinstance(term, tuple) and term[0] == "list":
            for o in term[1]:
                mentioned(o, acc)

    used: set = set()
    for s, p, o in triples:
        mentioned(s, used)
        mentioned(o, used)
    assert used <= declared


def test_sanitize_fragment():
    assert sanitize_fragment("foo bar") == "foo_bar"
    assert sanitize_fragment("9lives") == "_9lives"
    assert sanitize_fragment("x.y-z_1") == "x.y-z_1"
    assert sanitize_fragment("") == "_"


def test_fragment_allocator_suffixes_and_notes():
    alloc = FragmentAllocator("class")
    assert alloc.allocate("a") == "a"
    assert alloc.allocate("a") == "a_2"
    assert alloc.allocate("a") == "a_3"
    assert alloc.allocate("b c") == "b_c"
    assert len(alloc.notes) == 3
