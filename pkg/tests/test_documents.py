from fractions import Fraction

import pytest

from htspec.documents import document_from, parse_document, parse_hypertree
from htspec.errors import NotATreeError, StructuralError
from htspec.scalars import format_scalar, parse_scalar

from conftest import fixture_names, load_fixture


class TestScalars:
    def test_int_parses_exact(self):
        assert parse_scalar(3) == Fraction(3)

    def test_rational_string(self):
        assert parse_scalar("2/5") == Fraction(2, 5)

    def test_float_parses_complex(self):
        assert parse_scalar(0.5) == complex(0.5, 0)

    def test_pair_parses_complex(self):
        assert parse_scalar([1.0, -2.0]) == complex(1, -2)

    def test_bad_inputs(self):
        for raw in (True, "a/b", [1.0], [1.0, 2.0, 3.0], None, {}):
            with pytest.raises(StructuralError):
                parse_scalar(raw)

    def test_format_round_trip(self):
        for value in (Fraction(5), Fraction(-3, 7), complex(1.5, -2.0)):
            assert parse_scalar(format_scalar(value)) == value


class TestParseDocument:
    def test_adjacency_unit(self):
        doc = load_fixture("single_edge_unit.json")
        weighted = parse_document(doc)
        assert weighted.weights.vertex_weights == (0, 0, 0)
        assert weighted.weights.edge_weights == (1,)
        assert weighted.weights.is_exact

    def test_rational_weights_exact(self):
        weighted = parse_document(load_fixture("single_edge_rational.json"))
        assert weighted.vertex_weight(0) == Fraction(1, 3)
        assert weighted.edge_weight(0) == Fraction(3, 2)

    def test_complex_weights(self):
        weighted = parse_document(load_fixture("path2_complex.json"))
        assert weighted.vertex_weight(0) == complex(0, 1)
        assert weighted.edge_weight(1) == complex(1, 1)
        assert not weighted.weights.is_exact

    def test_named_weighting_overrides_arrays(self):
        doc = load_fixture("single_edge_unit.json")
        doc["weighting"] = "laplacian"
        doc["vertex_weights"] = [9, 9, 9]
        doc["edge_weights"] = [9]
        weighted = parse_document(doc)
        assert weighted.weights.vertex_weights == (1, 1, 1)
        assert weighted.weights.edge_weights == (-1,)

    def test_missing_weights_rejected(self):
        with pytest.raises(StructuralError):
            parse_document({"k": 3, "n": 3, "edges": [[0, 1, 2]]})

    def test_missing_field_rejected(self):
        with pytest.raises(StructuralError):
            parse_document({"k": 3, "edges": [[0, 1, 2]]})

    def test_unknown_weighting_rejected(self):
        doc = load_fixture("single_edge_unit.json")
        doc["weighting"] = "mystery"
        with pytest.raises(StructuralError):
            parse_document(doc)

    def test_cyclic_fixture_carries_certificate(self):
        with pytest.raises(NotATreeError) as info:
            parse_hypertree(load_fixture("invalid_cycle.json"))
        assert info.value.certificate.connected
        assert not info.value.certificate.acyclic

    def test_disconnected_fixture_counts_components(self):
        with pytest.raises(NotATreeError) as info:
            parse_hypertree(load_fixture("invalid_disconnected.json"))
        assert info.value.certificate.component_count == 2

    def test_valid_fixtures_parse_as_trees(self):
        for name in fixture_names():
            if name == "invalid_k2_path.json":
                continue
            tree = parse_hypertree(load_fixture(name))
            assert tree.certificate.is_tree

    def test_document_round_trip(self):
        original = load_fixture("single_edge_rational.json")
        weighted = parse_document(original)
        dumped = document_from(weighted)
        assert parse_document(dumped).weights == weighted.weights
        assert dumped["edges"] == original["edges"]
