"""HTTP JSON interface to the query engine.

`create_app` loads a knowledge base directory once at startup and serves
it read-only.  All error responses share one envelope::

    {"error": {"code": "<stable code>", "message": "<human text>"}}

so clients can branch on ``code`` without parsing prose.  Query failures
map to statuses by code: ``malformed_query`` is the client's phrasing
(400), ``no_relation`` is a well-formed question the ontology cannot
connect (422), ``empty_result`` is a valid relation with nothing
recorded (404).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import perf
from .engine import QueryError, answer_query, answer_to_dict
from .loader import LoadedKb, load_kb
from .rdf_parser import Literal
from .store import KnowledgeBase

_QUERY_STATUS = {
    "malformed_query": 400,
    "no_relation": 422,
    "empty_result": 404,
}

_HTTP_CODES = {
    404: "not_found",
    405: "method_not_allowed",
}


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": {"code": code, "message": message}})


class QueryRequest(BaseModel):
    q: str


@dataclass(frozen=True)
class ServiceConfig:
    kb_dir: Path
    host: str = "127.0.0.1"
    port: int = 8000
    static_dir: Path | None = None


def _class_node(kb: KnowledgeBase, name: str) -> dict[str, Any]:
    return {
        "name": name,
        "instances": list(kb.direct_instances(name)),
        "children": [_class_node(kb, child) for child in kb.children_of(name)],
    }


def ontology_summary(kb: KnowledgeBase) -> dict[str, Any]:
    return {
        "roots": [_class_node(kb, root) for root in kb.roots()],
        "properties": [
            {"name": p.name, "domains": list(p.domains), "ranges": list(p.ranges)}
            for p in kb.properties()
        ],
        "counts": {
            "classes": len(kb.classes),
            "properties": len(kb.properties()),
            "instances": sum(len(kb.subtree_instances(r)) for r in kb.roots()),
            "documents": kb.doc_count,
        },
    }


def create_app(kb_dir: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    loaded: LoadedKb = load_kb(kb_dir)
    kb = loaded.kb

    app = FastAPI(title="ontosearch", docs_url=None, redoc_url=None,
                  openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(QueryError)
    async def on_query_error(request: Request, exc: QueryError) -> JSONResponse:
        return _error(_QUERY_STATUS.get(exc.code, 400), exc.code, str(exc))

    @app.exception_handler(LookupError)
    async def on_lookup_error(request: Request, exc: LookupError) -> JSONResponse:
        return _error(404, "not_found", str(exc))

    @app.exception_handler(perf.DomainError)
    async def on_domain_error(request: Request, exc: perf.DomainError) -> JSONResponse:
        return _error(400, "invalid_parameters", str(exc))

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request,
                                  exc: RequestValidationError) -> JSONResponse:
        return _error(400, "invalid_request", str(exc.errors()))

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request,
                            exc: StarletteHTTPException) -> JSONResponse:
        code = _HTTP_CODES.get(exc.status_code, "http_error")
        return _error(exc.status_code, code, str(exc.detail))

    @app.get("/healthz")
    async def healthz() -> dict[str, Any]:
        return {"status": "ok", "documents": kb.doc_count}

    @app.post("/api/query")
    async def query(body: QueryRequest) -> dict[str, Any]:
        answer = answer_query(kb, loaded.class_table, loaded.instance_table,
                              body.q)
        return answer_to_dict(answer)

    @app.get("/api/ontology")
    async def ontology() -> dict[str, Any]:
        return ontology_summary(kb)

    @app.get("/api/classes/{name}/instances")
    async def class_instances(name: str) -> dict[str, Any]:
        display = kb.class_display(name)
        return {"class": display, "instances": list(kb.subtree_instances(display))}

    @app.get("/api/instances/{name}")
    async def instance_detail(name: str) -> dict[str, Any]:
        record = kb.instance(name)
        assertions = []
        for assertion in record.assertions:
            if isinstance(assertion.value, Literal):
                kind, rendered = "literal", assertion.value.text
            else:
                kind, rendered = "resource", assertion.value.target
            assertions.append({"property": assertion.property,
                               "kind": kind, "value": rendered})
        return {"id": record.id, "class": record.class_name,
                "assertions": assertions}

    @app.get("/api/perf")
    async def perf_curves(r: float, n_min: float = 10,
                          n_max: float = 100000, steps: int = 5) -> dict[str, Any]:
        points = [
            {"n": p.n, "best_case": p.best, "worst_case": p.worst,
             "keyword": p.keyword}
            for p in perf.emit_curves(n_min, n_max, steps, r)
        ]
        return {"r": r, "points": points, "note": perf.WORST_CASE_NOTE}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="static")

    return app


def serve(config: ServiceConfig) -> None:
    import uvicorn

    app = create_app(config.kb_dir, config.static_dir)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
