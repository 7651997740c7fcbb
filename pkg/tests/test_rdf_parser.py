import string

import pytest
from hypothesis import given, strategies as st

from ontosearch.rdf_parser import (
    Assertion,
    BadReferenceError,
    ClassDecl,
    InstanceDecl,
    Literal,
    MalformedXmlError,
    MissingIdError,
    ParseError,
    PropertyDecl,
    ResourceRef,
    Source,
    SubclassLink,
    UnknownConstructError,
    parse_document,
    serialize_document,
)

SRC = Source("<test>", 0, 0)  # ignored in comparisons

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"

INSTANCE_DOC = """<?xml version="1.0"?>
<vegetable rdf:ID="potato"
    xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
    xmlns="http://www.westbengal.org/crops#">
  <soilreq>KR256</soilreq>
</vegetable>
"""

SCHEMA_DOC = """<?xml version="1.0"?>
<rdf:RDF
    xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
    xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
    xml:base="http://www.westbengal.org/crops#">
  <rdfs:Class rdf:ID="Vegetable">
    <rdfs:subClassOf rdf:resource="#Crops"/>
  </rdfs:Class>
  <rdfs:Class rdf:ID="Fruits">
    <rdfs:subClassOf rdf:resource="#Crops"/>
  </rdfs:Class>
</rdf:RDF>
"""

PROPERTY_DOC = """<?xml version="1.0"?>
<rdf:Property rdf:ID="seasonreqd"
    xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
    xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#">
  <rdfs:domain rdf:resource="#Vegetable"/>
  <rdfs:range rdf:resource="#season"/>
</rdf:Property>
"""

EMPTY_DOC = """<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"/>
"""


class TestGolden:
    def test_instance_doc(self):
        decls = parse_document(INSTANCE_DOC, "potato.rdf")
        assert decls == [
            InstanceDecl("potato", "vegetable",
                         (Assertion("soilreq", Literal("KR256")),), SRC),
        ]

    def test_schema_doc(self):
        decls = parse_document(SCHEMA_DOC, "schema.rdf")
        assert decls == [
            ClassDecl("Vegetable", SRC),
            SubclassLink("Vegetable", "Crops", SRC),
            ClassDecl("Fruits", SRC),
            SubclassLink("Fruits", "Crops", SRC),
        ]

    def test_property_doc(self):
        decls = parse_document(PROPERTY_DOC, "prop.rdf")
        assert decls == [
            PropertyDecl("seasonreqd", ("Vegetable",), ("season",), SRC),
        ]

    def test_empty_rdf(self):
        assert parse_document(EMPTY_DOC, "empty.rdf") == []

    @pytest.mark.parametrize("doc", [INSTANCE_DOC, SCHEMA_DOC, PROPERTY_DOC,
                                     EMPTY_DOC])
    def test_round_trip(self, doc):
        decls = parse_document(doc, "in.rdf")
        again = parse_document(serialize_document(decls), "out.rdf")
        assert again == decls


class TestSourceSpans:
    def test_instance_span(self):
        (decl,) = parse_document(INSTANCE_DOC, "potato.rdf")
        assert decl.source.doc_id == "potato.rdf"
        assert decl.source.line_start == 2
        assert decl.source.line_end == 6

    def test_every_declaration_has_a_span_inside_the_text(self):
        total_lines = SCHEMA_DOC.count("\n") + 1
        for decl in parse_document(SCHEMA_DOC, "schema.rdf"):
            assert 1 <= decl.source.line_start <= decl.source.line_end
            assert decl.source.line_end <= total_lines


class TestOrderAndLocality:
    def test_assertion_order_preserved(self):
        doc = """<crop rdf:ID="x"
            xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
            xmlns="http://example.org/t#">
          <b>2</b><a>1</a><c>3</c><a>4</a>
        </crop>"""
        (decl,) = parse_document(doc)
        assert [a.property for a in decl.assertions] == ["b", "a", "c", "a"]
        assert [a.value.text for a in decl.assertions] == ["2", "1", "3", "4"]

    def test_schema_body_concatenation(self):
        def schema(body):
            return (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
                    f"{body}</rdf:RDF>")

        body_a = '<rdfs:Class rdf:ID="A"/>'
        body_b = ('<rdfs:Class rdf:ID="B">'
                  '<rdfs:subClassOf rdf:resource="#A"/></rdfs:Class>'
                  '<rdf:Property rdf:ID="p"><rdfs:domain rdf:resource="#A"/>'
                  "</rdf:Property>")
        combined = parse_document(schema(body_a + body_b))
        assert combined == (parse_document(schema(body_a))
                            + parse_document(schema(body_b)))


class TestErrors:
    def test_malformed_xml(self):
        with pytest.raises(MalformedXmlError):
            parse_document("<rdf:RDF", "x.rdf")
        with pytest.raises(MalformedXmlError):
            parse_document("", "x.rdf")

    def test_unknown_element_in_schema(self):
        doc = (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
               '<rdf:Description rdf:ID="x"/></rdf:RDF>')
        with pytest.raises(UnknownConstructError) as exc:
            parse_document(doc, "x.rdf")
        assert "x.rdf:1" in str(exc.value)

    def test_unknown_child_in_class(self):
        doc = (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
               '<rdfs:Class rdf:ID="A"><rdfs:label>x</rdfs:label>'
               "</rdfs:Class></rdf:RDF>")
        with pytest.raises(UnknownConstructError):
            parse_document(doc)

    def test_missing_id(self):
        doc = f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}"><rdfs:Class/></rdf:RDF>'
        with pytest.raises(MissingIdError):
            parse_document(doc)

    def test_rdf_about_rejected_with_hint(self):
        doc = (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
               '<rdfs:Class rdf:about="#A"/></rdf:RDF>')
        with pytest.raises(MissingIdError) as exc:
            parse_document(doc)
        assert "rdf:about" in str(exc.value)

    def test_invalid_id_text(self):
        doc = (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
               '<rdfs:Class rdf:ID="two words"/></rdf:RDF>')
        with pytest.raises(MissingIdError):
            parse_document(doc)

    @pytest.mark.parametrize("ref", ["Crops", "http://other.org/x#Crops", "#", ""])
    def test_bad_reference_forms(self, ref):
        doc = (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
               f'<rdfs:Class rdf:ID="A"><rdfs:subClassOf rdf:resource="{ref}"/>'
               "</rdfs:Class></rdf:RDF>")
        with pytest.raises(BadReferenceError):
            parse_document(doc)

    def test_subclassof_without_resource(self):
        doc = (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
               '<rdfs:Class rdf:ID="A"><rdfs:subClassOf/></rdfs:Class></rdf:RDF>')
        with pytest.raises(BadReferenceError):
            parse_document(doc)

    def test_assertion_with_text_and_resource(self):
        doc = (f'<crop rdf:ID="x" xmlns:rdf="{RDF}" xmlns="http://e.org/t#">'
               '<p rdf:resource="#y">text too</p></crop>')
        with pytest.raises(BadReferenceError):
            parse_document(doc)

    def test_nested_assertion_elements(self):
        doc = (f'<crop rdf:ID="x" xmlns:rdf="{RDF}" xmlns="http://e.org/t#">'
               "<p><q>1</q></p></crop>")
        with pytest.raises(UnknownConstructError):
            parse_document(doc)

    def test_wrong_rdf_namespace(self):
        doc = ('<rdf:RDF xmlns:rdf="http://www.w3.org/notrdf#">'
               "</rdf:RDF>")
        with pytest.raises(ParseError):
            parse_document(doc)

    def test_unknown_attribute(self):
        doc = (f'<rdf:RDF xmlns:rdf="{RDF}" xmlns:rdfs="{RDFS}">'
               '<rdfs:Class rdf:ID="A" rdf:nodeID="b"/></rdf:RDF>')
        with pytest.raises(UnknownConstructError):
            parse_document(doc)

    def test_rdfs_element_cannot_be_root(self):
        doc = f'<rdfs:subClassOf xmlns:rdfs="{RDFS}"/>'
        with pytest.raises(UnknownConstructError):
            parse_document(doc)

    def test_rdf_namespaced_assertion_rejected(self):
        doc = (f'<crop rdf:ID="x" xmlns:rdf="{RDF}" xmlns="http://e.org/t#">'
               '<rdf:value>1</rdf:value></crop>')
        with pytest.raises(UnknownConstructError):
            parse_document(doc)


# Names usable anywhere (attribute values): any word/hyphen characters.
ref_names = st.text(alphabet=string.ascii_letters + string.digits + "_-",
                    min_size=1, max_size=8)
# Names that must survive as XML element names.
elem_names = ref_names.filter(
    lambda s: (s[0].isalpha() or s[0] == "_") and not s.lower().startswith("xml"))
literal_text = st.text(
    alphabet=string.ascii_letters + string.digits + " <>&\"'.,;:!?#()-",
    max_size=30).map(str.strip)


@st.composite
def schema_decls(draw):
    out = []
    for _ in range(draw(st.integers(0, 4))):
        if draw(st.booleans()):
            name = draw(ref_names)
            out.append(ClassDecl(name, SRC))
            for _ in range(draw(st.integers(0, 2))):
                out.append(SubclassLink(name, draw(ref_names), SRC))
        else:
            out.append(PropertyDecl(
                draw(ref_names),
                tuple(draw(st.lists(ref_names, max_size=2))),
                tuple(draw(st.lists(ref_names, max_size=2))),
                SRC))
    return out


@st.composite
def instance_decl(draw):
    assertions = []
    for _ in range(draw(st.integers(0, 4))):
        if draw(st.booleans()):
            value = Literal(draw(literal_text))
        else:
            value = ResourceRef(draw(ref_names))
        assertions.append(Assertion(draw(elem_names), value))
    return InstanceDecl(draw(ref_names), draw(elem_names),
                        tuple(assertions), SRC)


@given(schema_decls())
def test_schema_round_trip(decls):
    assert parse_document(serialize_document(decls)) == decls


@given(instance_decl())
def test_instance_round_trip(decl):
    assert parse_document(serialize_document([decl])) == [decl]


def test_serialize_rejects_orphan_subclass_link():
    with pytest.raises(ValueError):
        serialize_document([SubclassLink("A", "B", SRC)])


def test_serialize_rejects_mixed_instance_and_schema():
    with pytest.raises(ValueError):
        serialize_document([ClassDecl("A", SRC),
                            InstanceDecl("x", "A", (), SRC)])
