"""JSON and CSV serialization of runs and fronts. Field layout is in SCHEMA.md."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from ..core import IterationRecord, RunResult, SolverConfig, StopReason

SCHEMA_VERSION = 1


def _floats(a):
    return None if a is None else [float(v) for v in np.asarray(a, dtype=float).ravel()]


def _array(a):
    return None if a is None else np.asarray(a, dtype=float)


def fmt(value) -> str:
    """Shortest round-trip text for a number."""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def run_summary(result: RunResult) -> dict:
    return {
        "stop_reason": result.stop_reason.value,
        "iterations": result.iterations,
        "final_x": _floats(result.final_x),
        "final_F": _floats(result.final_F),
        "final_v_norm": float(result.final_v_norm),
        "min_v_norm": float(result.min_v_norm),
        "f_evals": result.f_evals,
        "j_evals": result.j_evals,
        "dual_solves": result.dual_solves,
        "message": result.message,
    }


def record_to_dict(r: IterationRecord) -> dict:
    return {
        "k": r.k, "x": _floats(r.x), "F": _floats(r.F), "v_norm": float(r.v_norm),
        "theta": float(r.theta), "psi_v": float(r.psi_v), "psi_d": float(r.psi_d),
        "gamma": float(r.gamma), "d": _floats(r.d), "alpha": float(r.alpha),
        "ls_trials": int(r.ls_trials), "reference": _floats(r.reference),
        "q": None if r.q is None else float(r.q), "lam": _floats(r.lam),
    }


def record_from_dict(d: dict) -> IterationRecord:
    return IterationRecord(
        k=int(d["k"]), x=_array(d["x"]), F=_array(d["F"]), v_norm=d["v_norm"],
        theta=d["theta"], psi_v=d["psi_v"], psi_d=d["psi_d"], gamma=d["gamma"],
        d=_array(d["d"]), alpha=d["alpha"], ls_trials=int(d["ls_trials"]),
        reference=_array(d["reference"]), q=d["q"], lam=_array(d["lam"]),
    )


def run_to_dict(result: RunResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "run",
        "problem": result.problem,
        "algorithm": result.config.algorithm.value,
        "config": result.config.to_dict(),
        "x0": _floats(result.x0),
        "summary": run_summary(result),
        "iterations": [record_to_dict(r) for r in result.trace],
    }


def run_from_dict(d: dict) -> RunResult:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
    s = d["summary"]
    return RunResult(
        problem=d["problem"], config=SolverConfig(**d["config"]), x0=_array(d["x0"]),
        trace=[record_from_dict(r) for r in d["iterations"]],
        stop_reason=StopReason(s["stop_reason"]), final_x=_array(s["final_x"]),
        final_F=_array(s["final_F"]), final_v_norm=s["final_v_norm"], f_evals=s["f_evals"],
        j_evals=s["j_evals"], dual_solves=s["dual_solves"], message=s["message"],
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False, ensure_ascii=False) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8")
    return path


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def trace_header(m: int) -> list[str]:
    return ["k"] + [f"F_{i + 1}" for i in range(m)] + ["v_norm", "psi_d", "alpha", "trials"]


def trace_csv(result: RunResult) -> str:
    m = len(result.final_F)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(trace_header(m))
    for r in result.trace:
        w.writerow([fmt(r.k)] + [fmt(f) for f in r.F]
                   + [fmt(r.v_norm), fmt(r.psi_d), fmt(r.alpha), fmt(r.ls_trials)])
    return buf.getvalue()


def parse_trace_csv(text: str) -> list[dict]:
    rows = list(csv.reader(io.StringIO(text, newline="")))
    header, body = rows[0], rows[1:]
    m = sum(1 for h in header if h.startswith("F_"))
    out = []
    for row in body:
        out.append({
            "k": int(row[0]),
            "F": [float(v) for v in row[1:1 + m]],
            "v_norm": float(row[1 + m]),
            "psi_d": float(row[2 + m]),
            "alpha": float(row[3 + m]),
            "trials": int(row[4 + m]),
        })
    return out


def write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def parse_rows_csv(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text, newline="")))
    return rows[0], rows[1:]
