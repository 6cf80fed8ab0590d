"""Local HTTP service for interactive feature selection and hole filling.

Serves a loaded artifact read-only; per-hole recommendations are computed on
demand against a client-supplied programming context, fills are type-checked
server-side, and accepted-rank events append to a JSONL interaction log.
The companion web UI (static files, when bundled) is served from the root.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import FileResponse, JSONResponse
from pydantic import BaseModel, Field

from .apiindex import SCALARS
from .artifact import NLIArtifact, search_features
from .config import SearchBudget
from .metrics import recommendation_metrics
from .synth import (
    ProgrammingContext,
    ContextVar,
    SynthError,
    TypeFillError,
    build_type_graph,
    instantiate,
    synthesize_hole,
)


class ContextVarModel(BaseModel):
    name: str
    type: str


class RecommendRequest(BaseModel):
    context: list[ContextVarModel] = Field(default_factory=list)


class FillRequest(BaseModel):
    context: list[ContextVarModel] = Field(default_factory=list)
    fills: dict[str, str] = Field(default_factory=dict)


class LogRequest(BaseModel):
    session: str = "default"
    entry_id: str
    hole_id: str
    accepted_rank: int | None = None


class InteractionLog:
    """Append-only JSONL log; appends are serialized."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: dict) -> None:
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record, sort_keys=True) + "\n")

    def records(self) -> list[dict]:
        if not self.path.exists():
            return []
        out = []
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                out.append(json.loads(line))
        return out


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message, **extra}}
    )


def _entry_summary(entry) -> dict:
    return {
        "id": entry.entry_id,
        "phrase": entry.feature.canonical.text(),
        "support": entry.feature.support,
    }


def create_app(
    artifact: NLIArtifact,
    log_path: str | Path = "interactions.jsonl",
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="featsmith", version="0.1.0")
    index = artifact.api_index
    type_graph = build_type_graph(index)
    log = InteractionLog(log_path)
    static = Path(static_dir) if static_dir else Path(__file__).parent / "static"

    def parse_context(raw: list[ContextVarModel]):
        variables = []
        for i, v in enumerate(raw):
            base = v.type.split("<")[0]
            if base not in index.types and v.type not in SCALARS:
                return None, _error(
                    422, "unknown_type", f"context variable {v.name}: unknown type {v.type}"
                )
            variables.append(ContextVar(v.name, v.type, i))
        return ProgrammingContext(variables), None

    @app.get("/api/features")
    def list_features(q: str = ""):
        entries = search_features(artifact, q)
        return {"query": q, "features": [_entry_summary(e) for e in entries]}

    @app.get("/api/features/{entry_id}")
    def get_entry(entry_id: str):
        entry = artifact.entry(entry_id)
        if entry is None:
            return _error(404, "unknown_entry", f"no entry {entry_id}")
        p = entry.pattern
        return {
            **_entry_summary(entry),
            "surface_forms": sorted(entry.feature.surface_forms),
            "api": {"name": p.api.name, "qualified": p.api.qualified},
            "skeleton": p.skeleton.text,
            "holes": [h.to_dict() for h in p.skeleton.holes],
            "pattern_support": p.support,
            "provenance": p.provenance,
        }

    @app.post("/api/features/{entry_id}/recommend")
    def recommend(entry_id: str, req: RecommendRequest):
        entry = artifact.entry(entry_id)
        if entry is None:
            return _error(404, "unknown_entry", f"no entry {entry_id}")
        ctx, err = parse_context(req.context)
        if err is not None:
            return err
        holes = []
        for hole in entry.pattern.skeleton.holes:
            recs = []
            if hole.kind == "HOLE" and hole.expected_type:
                ranked = synthesize_hole(
                    hole.expected_type,
                    ctx,
                    type_graph,
                    SearchBudget(),
                    entry.pattern.hole_stats,
                    hole.id,
                )
                recs = [
                    {
                        "rank": r.rank,
                        "text": r.text,
                        "cost": r.cost,
                        "frequency": r.corpus_frequency,
                    }
                    for r in ranked
                ]
            holes.append({**hole.to_dict(), "recommendations": recs})
        return {"id": entry_id, "holes": holes}

    @app.post("/api/features/{entry_id}/fill")
    def fill(entry_id: str, req: FillRequest):
        entry = artifact.entry(entry_id)
        if entry is None:
            return _error(404, "unknown_entry", f"no entry {entry_id}")
        ctx, err = parse_context(req.context)
        if err is not None:
            return err
        try:
            snippet = instantiate(entry.pattern.skeleton, dict(req.fills), ctx, index)
        except TypeFillError as exc:
            return _error(
                422,
                "type_mismatch",
                str(exc),
                hole=exc.hole,
                expected=exc.expected,
                actual=exc.actual,
            )
        except SynthError as exc:
            return _error(422, "synthesis_failed", str(exc))
        return {"id": entry_id, "snippet": snippet.text}

    @app.post("/api/log")
    def log_interaction(req: LogRequest):
        if req.accepted_rank is not None and req.accepted_rank < 1:
            return _error(422, "bad_rank", "accepted_rank must be >= 1 or null")
        log.append(req.model_dump())
        return {"ok": True}

    @app.get("/api/metrics")
    def metrics(session: str | None = None):
        records = log.records()
        if session is not None:
            records = [r for r in records if r.get("session") == session]
        if not records:
            return {"interactions": 0, "mrr": None, "hit1": None}
        mrr, hit1 = recommendation_metrics(records)
        return {"interactions": len(records), "mrr": mrr, "hit1": hit1}

    @app.get("/")
    def root():
        page = static / "index.html"
        if page.exists():
            return FileResponse(page)
        return JSONResponse({"service": "featsmith", "library": artifact.library})

    if static.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/static", StaticFiles(directory=static), name="static")

    return app
