"""HTTP/JSON session API for interactive exploration.

Sessions live in memory; all requests on one session are serialized through
a per-session lock (409 on lock timeout).  The action log is append-only so
replaying it from the root reproduces the explored graph, ids included.
"""

from __future__ import annotations

import json
import threading
import uuid

from fastapi import Body, FastAPI, HTTPException, Query, Response

from . import presets
from .errors import SiltError
from .explorer import Arrow, Node, SiltingQuiverGraph, export_json
from .mutation import mutate
from .serde import presentation_from_json
from .silting import algebra_object, compare
from .workspace import Workspace

LOCK_TIMEOUT = 10.0


class Session:
    def __init__(self, ws: Workspace):
        self.id = uuid.uuid4().hex
        self.ws = ws
        self.lock = threading.Lock()
        root = algebra_object(ws)
        self.nodes = [root.ids]  # node id = index
        self.node_index = {root.ids: 0}
        self.objects = {0: root}
        self.edges = []  # (source, target, class_id, direction)
        self.current = 0
        self.undo_stack = []
        self.history = []  # append-only action log

    def node_payload(self, node_id: int, detail: bool = True) -> dict:
        ws = self.ws
        obj = self.objects[node_id]
        summands = []
        base = tuple(sorted(ws.projective_ids))
        for i in obj.ids:
            C = ws.registry.complex(i)
            entry = {
                "registry_id": i,
                "label": ws.registry.label(i),
                "graded_dims": {str(d): list(v) for d, v in C.graded_dims().items()},
            }
            if detail:
                from .silting import gamma

                entry["gamma"] = list(map(int, gamma(ws, base, C)))
            summands.append(entry)
        return {
            "id": node_id,
            "label": obj.label(ws),
            "summands": summands,
            "certificate": obj.certificate.status,
        }

    def state_payload(self) -> dict:
        obj = self.objects[self.current]
        return {
            "session_id": self.id,
            "algebra": {"hash": self.ws.alg.hash(), "vertices": self.ws.alg.vertex_labels,
                        "field_char": self.ws.alg.field.char},
            "current": self.node_payload(self.current),
            "available_mutations": {
                "left": [self.ws.registry.label(i) for i in obj.ids],
                "right": [self.ws.registry.label(i) for i in obj.ids],
            },
            "history_length": len(self.history),
        }

    def graph_struct(self) -> SiltingQuiverGraph:
        nodes = []
        for idx, ids in enumerate(self.nodes):
            nodes.append(
                Node(
                    index=idx,
                    key=ids,
                    ids=ids,
                    depth=0,
                    certificate_status=self.objects[idx].certificate.status,
                )
            )
        arrows = [Arrow(s, t, c, d) for (s, t, c, d) in self.edges]
        return SiltingQuiverGraph(nodes, arrows, False, False, dict(self.node_index))

    def mutate_at(self, class_token, direction: str) -> dict:
        ws = self.ws
        obj = self.objects[self.current]
        cls = None
        for i in obj.ids:
            if str(i) == str(class_token) or ws.registry.label(i) == class_token:
                cls = i
                break
        if cls is None:
            raise HTTPException(status_code=422, detail=f"summand class {class_token!r} not in the current object")
        if direction not in ("left", "right"):
            raise HTTPException(status_code=422, detail="direction must be left or right")
        new = mutate(ws, obj, [cls], direction)
        if new.ids in self.node_index:
            tgt = self.node_index[new.ids]
        else:
            tgt = len(self.nodes)
            self.nodes.append(new.ids)
            self.node_index[new.ids] = tgt
            self.objects[tgt] = new
        if direction == "left":
            edge = (self.current, tgt, cls, "left")
        else:
            fresh = [x for x in new.ids if x not in obj.ids]
            edge = (tgt, self.current, fresh[0] if fresh else cls, "right")
        if edge not in self.edges:
            self.edges.append(edge)
        self.undo_stack.append(self.current)
        self.history.append({"node": self.current, "class": cls, "direction": direction})
        self.current = tgt
        return {
            "node": self.node_payload(tgt),
            "edge": {"source": edge[0], "target": edge[1], "class": edge[2], "direction": edge[3]},
        }


class SessionStore:
    def __init__(self):
        self._sessions = {}
        self._lock = threading.Lock()

    def create(self, ws: Workspace) -> Session:
        s = Session(ws)
        with self._lock:
            self._sessions[s.id] = s
        return s

    def get(self, sid: str) -> Session:
        with self._lock:
            s = self._sessions.get(sid)
        if s is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return s

    def drop(self, sid: str):
        with self._lock:
            if sid not in self._sessions:
                raise HTTPException(status_code=404, detail="unknown session")
            del self._sessions[sid]


def create_app() -> FastAPI:
    app = FastAPI(title="siltlab session service")
    store = SessionStore()
    app.state.store = store

    def locked(session: Session):
        if not session.lock.acquire(timeout=LOCK_TIMEOUT):
            raise HTTPException(status_code=409, detail="session busy")
        return session.lock

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict = Body(...)):
        try:
            if "preset" in payload:
                pres = presets.preset(payload["preset"])
            else:
                pres = presentation_from_json(payload)
            ws = Workspace.from_presentation(pres)
        except (SiltError, KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=f"malformed algebra: {exc}")
        s = store.create(ws)
        return {"session_id": s.id, "root": s.node_payload(0)}

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        s = store.get(sid)
        lock = locked(s)
        try:
            return s.state_payload()
        finally:
            lock.release()

    @app.post("/sessions/{sid}/mutate")
    def do_mutate(sid: str, payload: dict = Body(...)):
        s = store.get(sid)
        lock = locked(s)
        try:
            return s.mutate_at(payload.get("summand_class"), payload.get("direction"))
        finally:
            lock.release()

    @app.post("/sessions/{sid}/undo")
    def do_undo(sid: str):
        s = store.get(sid)
        lock = locked(s)
        try:
            if s.undo_stack:
                s.current = s.undo_stack.pop()
            return s.state_payload()
        finally:
            lock.release()

    @app.get("/sessions/{sid}/graph")
    def get_graph(sid: str, mod_shift: bool = Query(default=False)):
        s = store.get(sid)
        lock = locked(s)
        try:
            g = s.graph_struct()
            if mod_shift:
                g = _mod_shift_view(s.ws, g)
            return json.loads(export_json(s.ws, g))
        finally:
            lock.release()

    @app.get("/sessions/{sid}/compare")
    def get_compare(sid: str, a: int = Query(...), b: int = Query(...)):
        s = store.get(sid)
        lock = locked(s)
        try:
            if a not in s.objects or b not in s.objects:
                raise HTTPException(status_code=404, detail="unknown node")
            return {"relation": compare(s.ws, s.objects[a], s.objects[b])}
        finally:
            lock.release()

    @app.delete("/sessions/{sid}", status_code=204)
    def drop_session(sid: str):
        store.drop(sid)
        return Response(status_code=204)

    return app


def _mod_shift_view(ws: Workspace, g: SiltingQuiverGraph) -> SiltingQuiverGraph:
    from .explorer import _normal_form

    index = {}
    nodes = []
    remap = {}
    for n in g.nodes:
        key, nf = _normal_form(ws, n.key)
        if key not in index:
            idx = len(nodes)
            nodes.append(Node(index=idx, key=key, ids=key, depth=n.depth,
                              certificate_status=n.certificate_status, shift_normal_form=nf))
            index[key] = idx
        remap[n.index] = (index[key], nf)
    arrows = []
    seen = set()
    for a in g.arrows:
        s, nf = remap[a.source]
        t, _ = remap[a.target]
        cls = ws.registry.shift_id(a.class_id, nf) if nf else a.class_id
        if (s, t, cls) not in seen:
            seen.add((s, t, cls))
            arrows.append(Arrow(s, t, cls, a.discovered_by))
    return SiltingQuiverGraph(nodes, arrows, True, g.exhausted, index)
