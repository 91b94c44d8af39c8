"""Local HTTP JSON API for interactive seed exploration.

Sessions pair a seed with its framed companion so the client sees cluster
variables and green/red vertex status together.  The service adds no
semantics of its own: every state it reports equals replaying the same
request sequence through the library.  State is in memory only; use the
export endpoint to persist a quiver.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass

from fastapi import Body, FastAPI, HTTPException, Response

from .errors import FrozenVertexError, QuiverlabError
from .quivers import (
    FramedState,
    apply_reduction,
    find_reddening,
    framed,
    gls_quiver,
    mutate_framed,
    quiver_from_obj,
    quiver_to_obj,
    quiver_to_text,
    ReductionScript,
)
from .coxeter import DynkinDiagram
from .seeds import Seed, initial_seed, mutate_seed

__all__ = ["create_app", "app", "BUILTIN_WORDS", "DEFAULT_PORT"]

DEFAULT_PORT = 7161

BUILTIN_WORDS = {
    "gls-A4-w0": (1, 2, 3, 4, 1, 2, 3, 1, 2, 1),
    "gls-A4-richardson": (1, 2, 3, 1, 2, 4, 3),
}


@dataclass
class _Session:
    seed: Seed
    framed: FramedState
    history: list  # mutated vertices as ints, reductions as {"reduce": script}
    undo: list  # snapshots of (seed, framed, history)
    lock: threading.Lock

    def snapshot(self):
        self.undo.append((self.seed, self.framed, tuple(self.history)))

    def rollback(self):
        self.seed, self.framed, history = self.undo.pop()
        self.history = list(history)


def _fresh_session(quiver) -> _Session:
    return _Session(initial_seed(quiver), framed(quiver), [], [], threading.Lock())


def create_app(term_budget: int = 200) -> FastAPI:
    app = FastAPI(title="quiverlab service")
    sessions: dict = {}
    registry_lock = threading.Lock()

    def get_session(sid: str) -> _Session:
        with registry_lock:
            session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {sid}")
        return session

    def state_payload(sid: str, session: _Session) -> dict:
        q = session.seed.quiver
        status = []
        for v in range(1, q.n + 1):
            if q.is_frozen(v):
                status.append("frozen")
            else:
                status.append(session.framed.vertex_status(v))
        cluster = []
        term_counts = []
        for f in session.seed.cluster:
            count = len(f.num.terms) + len(f.den.terms)
            term_counts.append(count)
            cluster.append(str(f) if count <= term_budget else "<large>")
        return {
            "id": sid,
            "quiver": quiver_to_obj(q),
            "status": status,
            "cluster": cluster,
            "term_counts": term_counts,
            "history": list(session.history),
        }

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict = Body(...)):
        try:
            if "builtin" in payload:
                name = payload["builtin"]
                word = BUILTIN_WORDS.get(name)
                if word is None:
                    raise QuiverlabError(
                        f"unknown builtin {name!r}; have {sorted(BUILTIN_WORDS)}"
                    )
                quiver = gls_quiver(DynkinDiagram.from_label("A4"), word)
            else:
                quiver = quiver_from_obj(payload)
        except (QuiverlabError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        sid = uuid.uuid4().hex[:12]
        session = _fresh_session(quiver)
        with registry_lock:
            sessions[sid] = session
        return state_payload(sid, session)

    @app.get("/sessions/{sid}")
    def read_session(sid: str):
        session = get_session(sid)
        with session.lock:
            return state_payload(sid, session)

    @app.post("/sessions/{sid}/mutate")
    def mutate(sid: str, payload: dict = Body(...)):
        session = get_session(sid)
        vertex = payload.get("vertex")
        if not isinstance(vertex, int) or isinstance(vertex, bool):
            raise HTTPException(status_code=400, detail="body must carry an integer vertex")
        with session.lock:
            try:
                new_seed = mutate_seed(session.seed, vertex)
                new_framed = mutate_framed(session.framed, vertex)
            except FrozenVertexError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            except (QuiverlabError, ValueError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            session.snapshot()
            session.seed = new_seed
            session.framed = new_framed
            session.history.append(vertex)
            return state_payload(sid, session)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = get_session(sid)
        with session.lock:
            if not session.undo:
                raise HTTPException(status_code=409, detail="nothing to undo")
            session.rollback()
            return state_payload(sid, session)

    @app.post("/sessions/{sid}/reduce")
    def reduce(sid: str, payload: dict = Body(...)):
        session = get_session(sid)
        with session.lock:
            try:
                script = ReductionScript.from_obj(payload)
                reduced = apply_reduction(session.seed.quiver, script)
            except (QuiverlabError, ValueError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            session.snapshot()
            session.seed = initial_seed(reduced)
            session.framed = framed(reduced)
            session.history.append({"reduce": script.to_obj()})
            return state_payload(sid, session)

    @app.post("/reddening")
    def reddening(payload: dict = Body(...)):
        try:
            quiver = quiver_from_obj(payload.get("quiver"))
            depth = payload.get("depth", 20)
            if not isinstance(depth, int) or isinstance(depth, bool) or depth < 1:
                raise QuiverlabError("depth must be a positive integer")
        except (QuiverlabError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        sequence = find_reddening(quiver, max_depth=depth)
        return {"sequence": list(sequence) if sequence is not None else None}

    @app.get("/export/{sid}")
    def export(sid: str):
        session = get_session(sid)
        with session.lock:
            text = quiver_to_text(session.seed.quiver)
        return Response(content=text, media_type="application/json")

    return app


app = create_app()
