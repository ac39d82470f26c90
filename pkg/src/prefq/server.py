"""HTTP service over the session layer — the workbench backend.

Every endpoint is a thin wrapper over the same operations the command
language dispatches to; engine errors surface as structured 4xx payloads.
Mutating requests are serialized behind one lock; reads are pure functions of
(state, request).
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import session as sess
from .errors import PrefqError
from .instances import to_csv


class RelationUpload(BaseModel):
    name: str
    schema_: list = Field(alias="schema")  # [{"name": ..., "sort": "str"|"rat"}]
    csv: str

    model_config = {"populate_by_name": True}


class PreferenceUpload(BaseModel):
    name: str
    dsl: str
    relation: str | None = None  # schema source; optional when unambiguous


class ParseRequest(BaseModel):
    dsl: str
    relation: str | None = None


class WinnowRequest(BaseModel):
    pref: str
    relation: str


class ReviseRequest(BaseModel):
    base: str
    revising: str
    operator: str
    tc: bool | None = None
    base_wins: bool = False
    name: str | None = None


class CheckRequest(BaseModel):
    pref: str
    property: str


class CompatRequest(BaseModel):
    pref: str
    base: str
    level: int
    reading: str = "harmonized"


class UpdateRequest(BaseModel):
    relation: str
    insert: list = []
    delete: list = []


class RankRequest(BaseModel):
    pref: str
    relation: str


class ExtendRequest(BaseModel):
    pref: str
    name: str | None = None


class TraceRequest(BaseModel):
    pref: str
    expression: str = "e2"


class PathRequest(BaseModel):
    path: str


def create_app(state: sess.SessionState | None = None) -> FastAPI:
    app = FastAPI(title="prefq", version="0.1.0")
    app.state.session = state if state is not None else sess.SessionState()
    lock = threading.Lock()

    def guard(fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PrefqError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/relations")
    def post_relation(req: RelationUpload):
        with lock:
            schema = guard(sess.schema_from_wire, req.schema_)
            return guard(sess.op_load, app.state.session, req.name, schema, req.csv)

    @app.get("/relations/{name}")
    def get_relation(name: str):
        s = app.state.session
        inst = guard(s.relation_named, name)
        return {
            "name": name,
            "version": s.versions[name],
            "schema": sess.schema_to_wire(inst.schema),
            "rows": sess.rows_to_wire(inst),
            "csv": to_csv(inst),
        }

    @app.post("/preferences")
    def post_preference(req: PreferenceUpload):
        with lock:
            s = app.state.session
            schema = _schema_for(s, req.relation)
            return guard(sess.op_pref, s, req.name, req.dsl, schema)

    @app.post("/preferences/parse")
    def post_parse(req: ParseRequest):
        from .parser import parse_formula

        s = app.state.session
        schema = _schema_for(s, req.relation)
        try:
            parse_formula(req.dsl, schema)
            return {"ok": True, "error": None}
        except PrefqError as exc:
            return {"ok": False, "error": str(exc)}

    def _schema_for(s: sess.SessionState, rel_name: str | None):
        if rel_name is not None:
            return guard(s.relation_named, rel_name).schema
        schema = sess._default_schema(s)
        if schema is None:
            raise HTTPException(
                status_code=400,
                detail="ambiguous schema: name the relation the formula targets",
            )
        return schema

    @app.get("/preferences")
    def list_preferences():
        s = app.state.session
        return [
            {
                "name": name,
                "dsl": s.pref_dsl[name],
                "properties": sess._pref_report(s.preferences[name]),
            }
            for name in sorted(s.preferences)
        ]

    @app.post("/winnow")
    def post_winnow(req: WinnowRequest):
        with lock:
            return guard(sess.op_winnow, app.state.session, req.pref, req.relation)

    @app.post("/revise")
    def post_revise(req: ReviseRequest):
        with lock:
            name = req.name or f"{req.base}_rev"
            return guard(
                sess.op_revise,
                app.state.session,
                req.base,
                req.revising,
                req.operator,
                name,
                tc=req.tc,
                base_wins=req.base_wins,
            )

    @app.post("/check")
    def post_check(req: CheckRequest):
        return guard(sess.op_check, app.state.session, req.pref, req.property)

    @app.post("/compat")
    def post_compat(req: CompatRequest):
        return guard(
            sess.op_compat,
            app.state.session,
            req.pref,
            req.base,
            req.level,
            req.reading,
        )

    @app.post("/update")
    def post_update(req: UpdateRequest):
        with lock:
            return guard(
                sess.op_update, app.state.session, req.relation, req.insert, req.delete
            )

    @app.post("/rank")
    def post_rank(req: RankRequest):
        return guard(sess.op_rank, app.state.session, req.pref, req.relation)

    @app.post("/extend-wo")
    def post_extend(req: ExtendRequest):
        with lock:
            name = req.name or f"{req.pref}_wo"
            return guard(sess.op_extend_wo, app.state.session, req.pref, name)

    @app.post("/trace")
    def post_trace(req: TraceRequest):
        return guard(sess.op_trace, app.state.session, req.pref, req.expression)

    @app.get("/session")
    def get_session():
        s = app.state.session
        return {
            "relations": [
                {"name": n, "version": s.versions[n], "rows": len(s.relations[n])}
                for n in sorted(s.relations)
            ],
            "preferences": [
                {"name": n, "dsl": s.pref_dsl[n]} for n in sorted(s.preferences)
            ],
            "caches": [
                {"pref": k[0], "relation": k[1], "version": v.version}
                for k, v in sorted(s.caches.items())
            ],
            "history": list(s.history),
        }

    @app.post("/session/save")
    def post_save(req: PathRequest):
        with lock:
            guard(sess.save_session, app.state.session, req.path)
            return {"saved": req.path}

    @app.post("/session/load")
    def post_load(req: PathRequest):
        with lock:
            app.state.session = guard(sess.load_session, req.path)
            return {"loaded": req.path}

    return app


def serve(state: sess.SessionState, port: int, host: str = "127.0.0.1"):
    import uvicorn

    uvicorn.run(create_app(state), host=host, port=port, log_level="warning")
