import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from htspec.service.app import create_app

from conftest import load_fixture


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture
def path2_doc():
    return load_fixture("loose_path2_unit.json")


class TestEndpoints:
    def test_health(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"

    def test_validate(self, client, path2_doc):
        response = client.post("/validate", json={"document": path2_doc})
        assert response.status_code == 200
        body = response.json()
        assert body["is_tree"] and body["m"] == 2 and body["n"] == 5

    def test_matching_poly(self, client, path2_doc):
        body = client.post("/matching-poly", json={"document": path2_doc}).json()
        assert body == {"backend": "rational", "coeffs": [0, 0, -2, 0, 0, 1]}

    def test_phi(self, client, path2_doc):
        body = client.post("/phi", json={"document": path2_doc}).json()
        assert body == {"backend": "rational", "coeffs": [-2, 0, 0, 1]}

    def test_subtrees(self, client, path2_doc):
        body = client.post("/subtrees", json={"document": path2_doc}).json()
        assert body["count"] == 8
        assert body["subtrees"][0] == {"edges": [], "vertices": [0]}
        # lexicographic on edge index sets: (0,), (0, 1), (1,)
        assert body["subtrees"][-1] == {"edges": [1], "vertices": [2, 3, 4]}
        assert body["subtrees"][-2] == {"edges": [0, 1], "vertices": [0, 1, 2, 3, 4]}

    def test_spectrum(self, client, path2_doc):
        body = client.post("/spectrum", json={"document": path2_doc}).json()
        assert len(body["roots"]) == 6
        assert all(r["status"] == "certified" for r in body["roots"])
        assert body["spectral_radius"] == pytest.approx(2 ** (1 / 3), abs=1e-9)
        assert body["trivial"][0]["also_subtree_root"] is True

    def test_radius_plain_and_cross_check(self, client, path2_doc):
        plain = client.post("/radius", json={"document": path2_doc}).json()
        assert set(plain) == {"radius"}
        full = client.post(
            "/radius", json={"document": path2_doc, "cross_check": True}
        ).json()
        assert full["gap"] <= 1e-6
        assert full["power_iterations"] >= 1

    def test_radius_seeded_start(self, client, path2_doc):
        seeded = client.post("/radius", json={"document": path2_doc, "seed": 7}).json()
        assert seeded["radius"] == pytest.approx(2 ** (1 / 3), abs=1e-9)

    def test_corollary(self, client):
        doc = load_fixture("single_edge_unit.json")
        body = client.post("/corollary", json={"document": doc, "sign": "signless"}).json()
        assert body["spectral_radius"] == pytest.approx(2.0, abs=1e-9)
        body = client.post("/corollary", json={"document": doc, "sign": "laplacian"}).json()
        assert body["spectral_radius"] is None

    def test_mu_tilde_broadcast_and_list(self, client, path2_doc):
        body = client.post("/mu-tilde", json={"document": path2_doc, "lambdas": 2.0}).json()
        assert body["value"][0] == pytest.approx(0.75, abs=1e-12)
        body = client.post(
            "/mu-tilde", json={"document": path2_doc, "lambdas": [2.0, 2.0]}
        ).json()
        assert body["value"][0] == pytest.approx(0.75, abs=1e-12)

    def test_normal_check_constant_includes_c3(self, client):
        doc = load_fixture("single_edge_unit.json")
        matrix = [{"v": v, "e": 0, "value": [1.0, 0.0]} for v in range(3)]
        body = client.post(
            "/normal-check", json={"document": doc, "matrix": matrix, "lambdas": 1}
        ).json()
        assert body["ok"] and body["c3_ok"] is True

    def test_normal_check_per_edge_skips_c3(self, client):
        doc = load_fixture("single_edge_unit.json")
        matrix = [{"v": v, "e": 0, "value": [1.0, 0.0]} for v in range(3)]
        body = client.post(
            "/normal-check", json={"document": doc, "matrix": matrix, "lambdas": [1]}
        ).json()
        assert body["c3_ok"] is None
        assert body["c1_ok"] and body["c2_ok"]

    def test_verify_round_trip(self, client, path2_doc):
        report = client.post("/spectrum", json={"document": path2_doc}).json()
        body = client.post(
            "/verify", json={"document": path2_doc, "report": report}
        ).json()
        assert body["ok"] is True
        assert body["counts"]["uncertified"] == 0


class TestErrorMapping:
    def test_cyclic_document_is_domain_error(self, client):
        doc = load_fixture("invalid_cycle.json")
        response = client.post("/spectrum", json={"document": doc})
        assert response.status_code == 422
        error = response.json()["error"]
        assert error["category"] == "domain"
        assert error["certificate"]["acyclic"] is False

    def test_k2_is_domain_error(self, client):
        doc = load_fixture("invalid_k2_path.json")
        response = client.post("/spectrum", json={"document": doc})
        assert response.status_code == 422
        assert response.json()["error"]["category"] == "domain"

    def test_pole_is_domain_error(self, client):
        doc = load_fixture("single_edge_unit.json")
        response = client.post("/mu-tilde", json={"document": doc, "lambdas": 0})
        assert response.status_code == 422

    def test_malformed_report_rejected(self, client, path2_doc):
        response = client.post(
            "/verify", json={"document": path2_doc, "report": {"nope": 1}}
        )
        assert response.status_code == 422

    def test_pydantic_validation_applies(self, client):
        response = client.post("/spectrum", json={"document": {"k": 3}})
        assert response.status_code == 422
