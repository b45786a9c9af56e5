import pytest
from fastapi.testclient import TestClient

from siltlab import presets
from siltlab.serde import presentation_to_json
from siltlab.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, preset="a2"):
    r = client.post("/sessions", json={"preset": preset})
    assert r.status_code == 201
    return r.json()


def test_create_session(client):
    data = make_session(client)
    assert "session_id" in data
    assert len(data["root"]["summands"]) == 2
    assert data["root"]["certificate"] == "Verified"


def test_create_session_from_presentation(client):
    r = client.post("/sessions", json=presentation_to_json(presets.two_cycle()))
    assert r.status_code == 201


def test_create_session_malformed(client):
    r = client.post("/sessions", json={"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "9"}]})
    assert r.status_code == 422


def test_get_state(client):
    data = make_session(client)
    sid = data["session_id"]
    r = client.get(f"/sessions/{sid}")
    assert r.status_code == 200
    state = r.json()
    assert state["current"]["id"] == 0
    assert set(state["available_mutations"]) == {"left", "right"}
    for s in state["current"]["summands"]:
        assert "gamma" in s and "graded_dims" in s


def test_unknown_session(client):
    assert client.get("/sessions/nope").status_code == 404


def test_mutate_and_undo(client):
    data = make_session(client)
    sid = data["session_id"]
    label = data["root"]["summands"][0]["label"]
    r = client.post(f"/sessions/{sid}/mutate", json={"summand_class": label, "direction": "left"})
    assert r.status_code == 200
    out = r.json()
    assert out["node"]["id"] == 1
    assert out["edge"]["source"] == 0 and out["edge"]["target"] == 1
    state = client.get(f"/sessions/{sid}").json()
    assert state["current"]["id"] == 1
    r = client.post(f"/sessions/{sid}/undo")
    assert r.status_code == 200
    assert r.json()["current"]["id"] == 0
    # graph keeps both nodes
    g = client.get(f"/sessions/{sid}/graph").json()
    assert len(g["nodes"]) == 2 and len(g["arrows"]) == 1


def test_mutate_invalid_class(client):
    data = make_session(client)
    sid = data["session_id"]
    r = client.post(f"/sessions/{sid}/mutate", json={"summand_class": "nope", "direction": "left"})
    assert r.status_code == 422


def test_compare_endpoint(client):
    data = make_session(client)
    sid = data["session_id"]
    label = data["root"]["summands"][0]["label"]
    client.post(f"/sessions/{sid}/mutate", json={"summand_class": label, "direction": "left"})
    r = client.get(f"/sessions/{sid}/compare", params={"a": 0, "b": 1})
    assert r.status_code == 200
    assert r.json()["relation"] == "greater"
    assert client.get(f"/sessions/{sid}/compare", params={"a": 0, "b": 9}).status_code == 404


def test_delete_session(client):
    sid = make_session(client)["session_id"]
    assert client.delete(f"/sessions/{sid}").status_code == 204
    assert client.get(f"/sessions/{sid}").status_code == 404


def test_replay_reproduces_graph(client):
    data = make_session(client, "two_cycle")
    sid = data["session_id"]
    labels = [s["label"] for s in data["root"]["summands"]]
    client.post(f"/sessions/{sid}/mutate", json={"summand_class": labels[0], "direction": "left"})
    client.post(f"/sessions/{sid}/undo")
    client.post(f"/sessions/{sid}/mutate", json={"summand_class": labels[1], "direction": "left"})
    g1 = client.get(f"/sessions/{sid}/graph").json()
    # replay the history in a fresh session
    data2 = make_session(client, "two_cycle")
    sid2 = data2["session_id"]
    client.post(f"/sessions/{sid2}/mutate", json={"summand_class": labels[0], "direction": "left"})
    client.post(f"/sessions/{sid2}/undo")
    client.post(f"/sessions/{sid2}/mutate", json={"summand_class": labels[1], "direction": "left"})
    g2 = client.get(f"/sessions/{sid2}/graph").json()
    assert g1["nodes"] == g2["nodes"]
    assert g1["arrows"] == g2["arrows"]


def test_graph_mod_shift(client):
    data = make_session(client, "dual_numbers")
    sid = data["session_id"]
    label = data["root"]["summands"][0]["label"]
    client.post(f"/sessions/{sid}/mutate", json={"summand_class": label, "direction": "left"})
    plain = client.get(f"/sessions/{sid}/graph").json()
    assert len(plain["nodes"]) == 2
    merged = client.get(f"/sessions/{sid}/graph", params={"mod_shift": "true"}).json()
    assert len(merged["nodes"]) == 1
    assert merged["mod_shift"] is True


def test_concurrent_mutations_do_not_corrupt(client):
    import threading

    data = make_session(client, "a2")
    sid = data["session_id"]
    labels = [s["label"] for s in data["root"]["summands"]]
    results = []

    def worker(label):
        r = client.post(f"/sessions/{sid}/mutate", json={"summand_class": label, "direction": "left"})
        results.append(r.status_code)

    threads = [threading.Thread(target=worker, args=(labels[k % 2],)) for k in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(code in (200, 409, 422) for code in results)
    g = client.get(f"/sessions/{sid}/graph").json()
    ids = {n["id"] for n in g["nodes"]}
    for a in g["arrows"]:
        assert a["source"] in ids and a["target"] in ids
    state = client.get(f"/sessions/{sid}")
    assert state.status_code == 200
