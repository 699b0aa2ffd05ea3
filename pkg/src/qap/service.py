"""Session service for the interactive cap builder.

A session holds a cap under construction.  Toggling a free point adds it,
toggling a selected point removes it, and toggling an excluded point is
rejected with the witness triples (a structured 409, not a transport
failure).  Board state is recomputed from the selected set on every request,
so there is no incremental drift to worry about; sessions are in-memory with
optional snapshot-to-file persistence in the cap file format.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import census
from .capcore import Cap, exclude_map, is_complete_in_ambient, completes_span
from .classify import UnclassifiableError, classify
from .deck import point_to_card
from .gf2geom import Point, grid_shape, grid_to_point, point_to_grid

MIN_N, MAX_N = 4, 8


class SessionError(KeyError):
    pass


@dataclass
class Session:
    id: str
    n: int
    selected: list[int] = field(default_factory=list)
    history: list[tuple[str, int]] = field(default_factory=list)  # ("add"|"remove", point)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def cap(self) -> Cap:
        return Cap.from_bits(self.n, self.selected)


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, n: int) -> Session:
        session = Session(id=uuid.uuid4().hex, n=n)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise SessionError(session_id)


def _point_doc(bits: int, n: int) -> dict:
    row, col = point_to_grid(Point(bits, n))
    doc = {"point": bits, "binary": format(bits, f"0{n}b"), "row": row, "col": col}
    if n == 6:
        doc["card"] = point_to_card(Point(bits, 6)).name()
    return doc


def board_state(session: Session) -> dict:
    cap = session.cap()
    emap = exclude_map(cap)
    k = cap.k
    try:
        label = str(classify(cap)) if 1 <= k <= 9 else None
    except UnclassifiableError:
        label = None
    try:
        count = census.count_caps(k, session.n) if k >= 1 else None
    except ValueError:
        count = None
    excludes = []
    for p in sorted(emap.points(), key=lambda q: q.bits):
        doc = _point_doc(p.bits, session.n)
        doc["multiplicity"] = emap.multiplicity(p)
        doc["triples"] = [[t.bits for t in triple] for triple in emap.triples(p)]
        excludes.append(doc)
    return {
        "session_id": session.id,
        "n": session.n,
        "k": k,
        "selected": [_point_doc(b, session.n) for b in cap.bits()],
        "excludes": excludes,
        "dimension": cap.dimension() if k else None,
        "class_label": label,
        "completes_span": completes_span(cap) if k else False,
        "complete_in_ambient": is_complete_in_ambient(cap) if k else False,
        "census": {"k": k, "n": session.n, "count": count},
    }


class CreateSessionBody(BaseModel):
    n: int


class ToggleBody(BaseModel):
    point: int | str


def _parse_point(value: int | str, n: int) -> int:
    p = Point.parse(value, n) if isinstance(value, int) else Point.parse(str(value), n)
    return p.bits


def create_app() -> FastAPI:
    app = FastAPI(title="qap cap builder")
    store = SessionStore()

    def get_session(session_id: str) -> Session:
        try:
            return store.get(session_id)
        except SessionError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        if not MIN_N <= body.n <= MAX_N:
            raise HTTPException(status_code=422, detail=f"n must be in {MIN_N}..{MAX_N}")
        return board_state(store.create(body.n))

    @app.get("/sessions/{session_id}")
    def get_board(session_id: str):
        return board_state(get_session(session_id))

    @app.post("/sessions/{session_id}/toggle")
    def toggle(session_id: str, body: ToggleBody):
        session = get_session(session_id)
        with session.lock:
            try:
                bits = _parse_point(body.point, session.n)
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            if bits in session.selected:
                session.selected.remove(bits)
                session.history.append(("remove", bits))
                return board_state(session)
            emap = exclude_map(session.cap())
            p = Point(bits, session.n)
            if p in emap:
                # Structured rejection: state is untouched.
                raise HTTPException(
                    status_code=409,
                    detail={
                        "error": "point_excluded",
                        "point": bits,
                        "multiplicity": emap.multiplicity(p),
                        "triples": [[t.bits for t in triple] for triple in emap.triples(p)],
                    },
                )
            session.selected.append(bits)
            session.history.append(("add", bits))
            return board_state(session)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = get_session(session_id)
        with session.lock:
            if session.history:
                action, bits = session.history.pop()
                if action == "add":
                    session.selected.remove(bits)
                else:
                    session.selected.append(bits)
            return board_state(session)

    @app.post("/sessions/{session_id}/reset")
    def reset(session_id: str):
        session = get_session(session_id)
        with session.lock:
            session.selected.clear()
            session.history.clear()
            return board_state(session)

    @app.get("/sessions/{session_id}/snapshot")
    def snapshot(session_id: str):
        # cap file format; pipe to a file to persist a board
        cap = get_session(session_id).cap()
        return {"n": cap.n, "points": [p.to_binary() for p in cap.points]}

    @app.get("/meta/census")
    def meta_census(n: int, k: int):
        try:
            row = census.census_row(k, n)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"k": k, "n": n, "count": row.total, "by_dimension": row.by_dimension}

    @app.get("/meta/probability")
    def meta_probability(n: int = 6):
        rows = census.probability_table(n)
        return {
            "n": n,
            "rows": [
                {
                    "k": r.k,
                    "p_no_quad": r.no_quad_str,
                    "p_quad": r.quad_str,
                    "p_no_quad_exact": [r.p_no_quad.numerator, r.p_no_quad.denominator],
                    "p_quad_exact": [r.p_quad.numerator, r.p_quad.denominator],
                }
                for r in rows
            ],
        }

    @app.get("/meta/grid")
    def meta_grid(n: int):
        if not MIN_N <= n <= MAX_N:
            raise HTTPException(status_code=422, detail=f"n must be in {MIN_N}..{MAX_N}")
        rows, cols = grid_shape(n)
        return {
            "n": n,
            "rows": rows,
            "cols": cols,
            "cells": [
                _point_doc(grid_to_point(r, c, n).bits, n)
                for r in range(rows)
                for c in range(cols)
            ],
        }

    return app


def run(host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)
