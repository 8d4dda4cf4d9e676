"""HTTP API backing the browser wizard.

Endpoints mirror the wizard steps: template load/save, ward classification
with the feasibility-guarantee gate, distribution previews, rate fitting,
and asynchronous generation with a downloadable archive.  All generation
goes through the same code paths as the CLI, so a given config and seed
produce byte-identical instance files either way.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import re
import threading
import time
import uuid
import zipfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel, ConfigDict

from pragen import generator, model
from pragen.distributions import (
    Empirical,
    age_samples,
    fit_rate_from_classes,
    lor_samples,
    los_samples,
    parse_empirical_table,
)
from pragen.feasibility import Method, WardConfig, classify
from pragen.generator import ConfigError
from pragen.tables import builtin_table_ids, load_builtin_table

API_SCHEMA_VERSION = 1

GUARANTEED_SHAPES = [
    "all rooms of one size c",
    "sizes {1, c} with at least c-1 single rooms",
    "sizes {2, 2c} with at least c-1 double rooms",
    "every size 1..n present",
    "every size 1, 2, 4, ..., 2^n present",
    "sizes {a, n*a} with at least n-1 rooms of size a",
    "every size a, 2a, ..., na present",
    "every size a, 2a, 4a, ..., (2^n)a present",
    "two coprime sizes a1 < a2 with fewer than a1 rooms of size a2",
    "a divisibility chain of sizes",
    "superincreasing sizes",
    "distinct sizes in arithmetic progression",
]


@dataclass
class Settings:
    data_dir: Path
    job_ttl_seconds: float = 3600.0
    max_instances: int = 100
    max_horizon: int = 3650
    max_preview_draws: int = 1_000_000
    cors_origin_regex: str = r"https?://(localhost|127\.0\.0\.1)(:\d+)?"


@dataclass
class Job:
    id: str
    status: str = "running"  # running | done | error
    error: str | None = None
    files: list[bytes] = field(default_factory=list)
    achieved_loads: list[float] = field(default_factory=list)
    archive: bytes | None = None
    instance_count: int = 0
    finished_at: float | None = None


class ClassifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    capacities: list[int]
    ensure_feasibility: bool = True


class PreviewRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    target: Literal["age", "los", "lor"]
    choice: dict
    n: int
    seed: int = 0
    age_min: int = 18
    age_max: int = 100


class FitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    classes: list[tuple[float, float]]


class TableUpload(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: str
    content: str


_TABLE_ID = re.compile(r"^[a-z0-9][a-z0-9_-]{0,63}$")


def _bad_request(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail=message)


def _deterministic_zip(files: list[tuple[str, bytes]]) -> bytes:
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
        for name, data in files:
            info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_DEFLATED
            archive.writestr(info, data)
    return buffer.getvalue()


def create_app(settings: Settings) -> FastAPI:
    app = FastAPI(title="pragen service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=settings.cors_origin_regex,
        allow_methods=["*"],
        allow_headers=["*"],
    )
    templates_dir = settings.data_dir / "templates"
    tables_dir = settings.data_dir / "tables"
    templates_dir.mkdir(parents=True, exist_ok=True)
    tables_dir.mkdir(parents=True, exist_ok=True)
    jobs: dict[str, Job] = {}
    jobs_lock = threading.Lock()

    def service_resolver(ref: str) -> Empirical:
        if ref in builtin_table_ids():
            return Empirical(table=load_builtin_table(ref), source=ref)
        user_path = tables_dir / f"{ref}.table"
        if _TABLE_ID.match(ref) and user_path.is_file():
            table = parse_empirical_table(user_path.read_text(encoding="utf-8"), label=ref)
            return Empirical(table=table, source=ref)
        raise ConfigError([f"unknown table {ref!r}"])

    def parse_config(doc: dict) -> generator.GeneratorConfig:
        try:
            return generator.config_from_dict(doc, table_resolver=service_resolver)
        except ConfigError as exc:
            raise _bad_request("; ".join(exc.problems)) from exc

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "schema_version": API_SCHEMA_VERSION}

    # -- templates ---------------------------------------------------------

    @app.post("/templates")
    def store_template(doc: dict) -> dict:
        parse_config(doc)  # shape and semantics must be valid before storing
        canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        template_id = hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]
        (templates_dir / f"{template_id}.json").write_text(
            json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        return {"id": template_id}

    @app.get("/templates")
    def list_templates() -> dict:
        out = []
        for path in sorted(templates_dir.glob("*.json")):
            doc = json.loads(path.read_text(encoding="utf-8"))
            out.append({"id": path.stem, "name": doc.get("name")})
        return {"templates": out}

    @app.get("/templates/{template_id}")
    def get_template(template_id: str) -> JSONResponse:
        path = templates_dir / f"{template_id}.json"
        if not _TABLE_ID.match(template_id) or not path.is_file():
            raise HTTPException(status_code=404, detail=f"unknown template {template_id!r}")
        return JSONResponse(json.loads(path.read_text(encoding="utf-8")))

    # -- ward classification -----------------------------------------------

    @app.post("/ward/classify")
    def ward_classify(req: ClassifyRequest) -> dict:
        if not req.capacities or any(c < 1 for c in req.capacities):
            raise _bad_request("capacities must be positive integers")
        family = classify(WardConfig(tuple(req.capacities)))
        gated = req.ensure_feasibility and family.kind == Method.SUBSET_SUM_ORACLE
        note = (
            "no closed-form separability criterion for this room mix; "
            "the feasibility guarantee would need the subset-sum fallback"
            if family.kind == Method.SUBSET_SUM_ORACLE
            else "closed-form separability criterion available"
        )
        return {
            "family": family.kind.value,
            "params": family.params(),
            "allowed": not gated,
            "suggestions": GUARANTEED_SHAPES if gated else [],
            "note": note,
        }

    # -- tables --------------------------------------------------------------

    def _table_meta(table_id: str, builtin: bool) -> dict:
        table = (
            load_builtin_table(table_id)
            if builtin
            else parse_empirical_table(
                (tables_dir / f"{table_id}.table").read_text(encoding="utf-8"), label=table_id
            )
        )
        cells: list[list[float]]
        if table.kind == "age_only":
            cells = [[a, w] for a, w in zip(table.ages, table.weights)]
        elif table.kind == "los_only":
            cells = [[l, w] for l, w in zip(table.loses, table.weights)]
        else:
            cells = [[a, l, w] for a, l, w in zip(table.ages, table.loses, table.weights)]
        return {
            "id": table_id,
            "kind": table.kind,
            "builtin": builtin,
            "age_min": table.age_min,
            "age_max": table.age_max,
            "los_min": table.los_min,
            "los_max": table.los_max,
            "age_class_width": table.age_class_width,
            "cells": cells,
        }

    @app.get("/tables")
    def list_tables() -> dict:
        user_ids = sorted(p.stem for p in tables_dir.glob("*.table"))
        out = [{"id": t, "builtin": True, "kind": load_builtin_table(t).kind} for t in builtin_table_ids()]
        out += [
            {
                "id": t,
                "builtin": False,
                "kind": parse_empirical_table(
                    (tables_dir / f"{t}.table").read_text(encoding="utf-8"), label=t
                ).kind,
            }
            for t in user_ids
        ]
        return {"tables": out}

    @app.get("/tables/{table_id}")
    def get_table(table_id: str) -> dict:
        if table_id in builtin_table_ids():
            return _table_meta(table_id, builtin=True)
        if _TABLE_ID.match(table_id) and (tables_dir / f"{table_id}.table").is_file():
            return _table_meta(table_id, builtin=False)
        raise HTTPException(status_code=404, detail=f"unknown table {table_id!r}")

    @app.post("/tables")
    def upload_table(req: TableUpload) -> dict:
        if not _TABLE_ID.match(req.id):
            raise _bad_request("table id must match [a-z0-9][a-z0-9_-]*")
        if req.id in builtin_table_ids():
            raise _bad_request(f"table id {req.id!r} is reserved for a builtin table")
        try:
            parse_empirical_table(req.content, label=req.id)
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc
        (tables_dir / f"{req.id}.table").write_text(req.content, encoding="utf-8")
        return {"id": req.id}

    # -- distribution previews ----------------------------------------------

    @app.post("/distributions/preview")
    def preview(req: PreviewRequest) -> dict:
        if not 1 <= req.n <= settings.max_preview_draws:
            raise _bad_request(f"n must be in 1..{settings.max_preview_draws}")
        try:
            choice = generator.choice_from_dict(req.choice, "choice", service_resolver)
        except ConfigError as exc:
            raise _bad_request("; ".join(exc.problems)) from exc
        rng = np.random.default_rng(req.seed)
        try:
            if req.target == "age":
                values = age_samples(choice, req.n, rng, req.age_min, req.age_max)
                width = 5
            elif req.target == "los":
                values = los_samples(choice, req.n, rng)
                width = 1
            else:
                values = lor_samples(choice, req.n, rng)
                width = 1
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc
        starts = (values // width) * width
        uniq, counts = np.unique(starts, return_counts=True)
        return {
            "bucket_width": width,
            "buckets": [[int(s), int(c)] for s, c in zip(uniq, counts)],
        }

    # -- rate fitting ---------------------------------------------------------

    @app.post("/rates/fit")
    def fit_rates(req: FitRequest) -> dict:
        try:
            poly, residual = fit_rate_from_classes([(a, r) for a, r in req.classes])
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc
        ages = list(range(0, 101, 2))
        return {
            "coefficients": list(poly.coefficients),
            "residual": residual,
            "curve": [[a, float(poly.rate_at(a))] for a in ages],
        }

    # -- generation jobs -------------------------------------------------------

    def run_job(job: Job, config: generator.GeneratorConfig) -> None:
        try:
            instances = generator.generate(config)
            files = []
            for k, instance in enumerate(instances):
                data = model.serialize(instance).encode("utf-8")
                job.files.append(data)
                job.achieved_loads.append(instance.meta["achieved_load"])
                files.append((f"instance_{k}.json", data))
            job.archive = _deterministic_zip(files)
            job.status = "done"
        except Exception as exc:  # surfaced through the status endpoint
            job.status = "error"
            job.error = str(exc)
        job.finished_at = time.monotonic()

    def get_job(job_id: str) -> Job:
        with jobs_lock:
            job = jobs.get(job_id)
            if job is None:
                raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
            if (
                job.finished_at is not None
                and time.monotonic() - job.finished_at > settings.job_ttl_seconds
            ):
                del jobs[job_id]
                raise HTTPException(status_code=410, detail="job expired")
            return job

    @app.post("/generate")
    def start_generate(doc: dict) -> dict:
        config = parse_config(doc)
        if config.instance_count > settings.max_instances:
            raise _bad_request(f"instance_count is capped at {settings.max_instances}")
        if config.horizon.days > settings.max_horizon:
            raise _bad_request(f"horizon is capped at {settings.max_horizon} days")
        job = Job(id=uuid.uuid4().hex[:12], instance_count=config.instance_count)
        with jobs_lock:
            jobs[job.id] = job
        worker = threading.Thread(target=run_job, args=(job, config), daemon=True)
        worker.start()
        return {"job_id": job.id}

    @app.get("/generate/{job_id}")
    def job_status(job_id: str) -> dict:
        job = get_job(job_id)
        return {
            "job_id": job.id,
            "status": job.status,
            "error": job.error,
            "instance_count": job.instance_count,
            "completed": len(job.files),
            "achieved_loads": job.achieved_loads,
        }

    @app.get("/generate/{job_id}/archive")
    def job_archive(job_id: str) -> Response:
        job = get_job(job_id)
        if job.status == "running":
            raise HTTPException(status_code=409, detail="job still running")
        if job.status == "error":
            raise _bad_request(f"job failed: {job.error}")
        return Response(
            content=job.archive,
            media_type="application/zip",
            headers={"Content-Disposition": f'attachment; filename="{job.id}.zip"'},
        )

    @app.get("/generate/{job_id}/files/{index}")
    def job_file(job_id: str, index: int) -> PlainTextResponse:
        job = get_job(job_id)
        if job.status == "running":
            raise HTTPException(status_code=409, detail="job still running")
        if job.status == "error":
            raise _bad_request(f"job failed: {job.error}")
        if not 0 <= index < len(job.files):
            raise HTTPException(status_code=404, detail=f"no instance file {index}")
        return PlainTextResponse(job.files[index], media_type="application/json")

    return app


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(prog="pragen-service", description=__doc__)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8787)
    parser.add_argument("--data-dir", default="./pragen-data", help="template and table store")
    parser.add_argument("--job-ttl", type=float, default=3600.0, help="seconds before finished jobs expire")
    args = parser.parse_args(argv)
    import uvicorn

    app = create_app(Settings(data_dir=Path(args.data_dir), job_ttl_seconds=args.job_ttl))
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
