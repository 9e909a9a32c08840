"""Deterministic parameter sweeps with JSON reports and line-delimited checkpoints."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator

from qschemes.verdict import Status, jsonable

log = logging.getLogger(__name__)

REPORT_SCHEMA = "qschemes.report/1"


def parse_values(text: str | int | Iterable[int] | None) -> tuple[int, ...] | None:
    """``"3"``, ``"2..5"`` (inclusive) or ``"2,3,7"`` -> sorted tuple of ints."""
    if text is None:
        return None
    if isinstance(text, int):
        return (text,)
    if not isinstance(text, str):
        return tuple(sorted(set(int(v) for v in text)))
    values: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            values.update(range(int(lo), int(hi) + 1))
        elif part:
            values.add(int(part))
    return tuple(sorted(values))


@dataclass(frozen=True)
class Grid:
    """Finite parameter ranges. ``n``/``e`` are absolute values; when absent
    they default to ``2d + n_offset`` and ``d + e_offset``."""

    q: tuple[int, ...]
    d: tuple[int, ...]
    n: tuple[int, ...] | None = None
    n_offset: tuple[int, ...] = (0,)
    e: tuple[int, ...] | None = None
    e_offset: tuple[int, ...] = (0,)
    j: tuple[int, ...] | None = None
    m: tuple[int, ...] | None = None

    def n_values(self, d: int) -> list[int]:
        if self.n is not None:
            return [n for n in self.n if n >= 2 * d]
        return [2 * d + o for o in self.n_offset if o >= 0]

    def e_values(self, d: int) -> list[int]:
        if self.e is not None:
            return [e for e in self.e if e >= d]
        return [d + o for o in self.e_offset if o >= 0]

    def j_values(self, d: int, lo: int = 1) -> list[int]:
        js = range(lo, d + 1) if self.j is None else [j for j in self.j if lo <= j <= d]
        return list(js)

    def describe(self) -> dict[str, Any]:
        out: dict[str, Any] = {"q": list(self.q), "d": list(self.d)}
        if self.n is not None:
            out["n"] = list(self.n)
        else:
            out["n_offset"] = list(self.n_offset)
        if self.e is not None:
            out["e"] = list(self.e)
        else:
            out["e_offset"] = list(self.e_offset)
        if self.j is not None:
            out["j"] = list(self.j)
        if self.m is not None:
            out["m"] = list(self.m)
        return out

    def with_overrides(self, **kwargs: Any) -> Grid:
        values = {k: v for k, v in kwargs.items() if v is not None}
        return Grid(**{**self.__dict__, **values})


@dataclass
class Record:
    key: dict[str, int]
    status: Status
    detail: str = ""
    witness: dict[str, Any] = field(default_factory=dict)
    flagged: bool = False

    def as_dict(self) -> dict[str, Any]:
        return {
            "tuple": dict(self.key),
            "status": self.status.value,
            "detail": self.detail,
            "flagged": self.flagged,
            "witness": jsonable(self.witness),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Record:
        return cls(
            {k: int(v) for k, v in data["tuple"].items()},
            Status(data["status"]),
            data.get("detail", ""),
            data.get("witness", {}),
            bool(data.get("flagged", False)),
        )


def key_string(key: dict[str, int]) -> str:
    return json.dumps(key, sort_keys=True, separators=(",", ":"))


def record_hash(data: dict[str, Any]) -> str:
    blob = json.dumps(data, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass
class VerdictReport:
    check: str
    grid: dict[str, Any]
    records: list[Record]
    duration: float = 0.0
    claim: str = ""

    def counts(self) -> dict[str, int]:
        out = {s.value: 0 for s in Status}
        for r in self.records:
            out[r.status.value] += 1
        return out

    @property
    def has_fail(self) -> bool:
        return any(r.status is Status.FAIL for r in self.records)

    @property
    def flagged(self) -> list[Record]:
        return [r for r in self.records if r.flagged]

    def by_key(self, **key: int) -> Record:
        for r in self.records:
            if all(r.key.get(k) == v for k, v in key.items()):
                return r
        raise KeyError(key)

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema": REPORT_SCHEMA,
            "check": self.check,
            "claim": self.claim,
            "grid": self.grid,
            "counts": self.counts(),
            "flagged": [r.key for r in self.flagged],
            "records": [r.as_dict() for r in self.records],
        }
        if include_timing:
            out["timing"] = {"duration_s": round(self.duration, 3)}
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        key_names: list[str] = []
        for r in self.records:
            for k in r.key:
                if k not in key_names:
                    key_names.append(k)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check", *key_names, "status", "flagged", "detail", "witness"])
        for r in self.records:
            writer.writerow(
                [
                    self.check,
                    *(r.key.get(k, "") for k in key_names),
                    r.status.value,
                    int(r.flagged),
                    r.detail,
                    json.dumps(jsonable(r.witness), sort_keys=True, separators=(",", ":")),
                ]
            )
        return buf.getvalue()


@dataclass(frozen=True)
class CheckSpec:
    """A sweepable check: enumerate tuple keys from a grid, evaluate one key."""

    name: str
    claim: str
    default_grid: Grid
    keys: Callable[[Grid], Iterator[dict[str, int]]]
    evaluate: Callable[[dict[str, int]], Record]


_REGISTRY: dict[str, CheckSpec] = {}


def register(entry: CheckSpec) -> CheckSpec:
    _REGISTRY[entry.name] = entry
    return entry


def get_check(name: str) -> CheckSpec:
    from qschemes import lemmas, verify  # noqa: F401  populate the registry

    return _REGISTRY[name]


def check_names() -> list[str]:
    from qschemes import lemmas, verify  # noqa: F401

    return sorted(_REGISTRY)


def _evaluate(name: str, key: dict[str, int]) -> dict[str, Any]:
    return get_check(name).evaluate(key).as_dict()


def _evaluate_batch(name: str, keys: list[dict[str, int]]) -> list[dict[str, Any]]:
    return [_evaluate(name, k) for k in keys]


def _load_checkpoint(path: Path, check: str) -> dict[str, dict[str, Any]]:
    done: dict[str, dict[str, Any]] = {}
    if not path.exists():
        return done
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            entry = json.loads(line)
        except json.JSONDecodeError:
            log.warning("skipping truncated checkpoint line")
            continue
        if entry.get("check") != check:
            continue
        record = entry.get("record")
        if record is None or record_hash(record) != entry.get("witness_hash"):
            log.warning("checkpoint entry %s failed its hash; recomputing", entry.get("tuple"))
            continue
        done[key_string(entry["tuple"])] = record
    return done


def run_check(
    name: str,
    grid: Grid | None = None,
    jobs: int = 1,
    checkpoint: str | Path | None = None,
    limit: int | None = None,
) -> VerdictReport:
    """Evaluate every tuple of ``grid`` in canonical order.

    With ``checkpoint``, completed tuples are appended as JSON lines
    ``{check, tuple, status, witness_hash, record}`` and skipped on the next
    run. ``limit`` stops after that many new evaluations (used to simulate an
    interrupted sweep).
    """
    check = get_check(name)
    grid = grid or check.default_grid
    start = time.perf_counter()
    keys = list(check.keys(grid))
    ckpt = Path(checkpoint) if checkpoint else None
    done = _load_checkpoint(ckpt, name) if ckpt else {}
    pending = [k for k in keys if key_string(k) not in done]
    if limit is not None:
        pending = pending[:limit]
    log.info("%s: %d tuples, %d from checkpoint, %d to evaluate", name, len(keys), len(keys) - len(pending), len(pending))

    handle = ckpt.open("a", encoding="utf-8") if ckpt else None
    try:
        for key, data in zip(pending, _iter_results(name, pending, jobs)):
            done[key_string(key)] = data
            if handle:
                entry = {
                    "check": name,
                    "tuple": key,
                    "status": data["status"],
                    "witness_hash": record_hash(data),
                    "record": data,
                }
                handle.write(json.dumps(entry, sort_keys=True, separators=(",", ":")) + "\n")
                handle.flush()
    finally:
        if handle:
            handle.close()

    records = []
    for k in keys:
        data = done.get(key_string(k))
        if data is not None:
            # checkpoint lines store sorted keys; restore the canonical order
            records.append(Record.from_dict({**data, "tuple": k}))
    return VerdictReport(name, grid.describe(), records, time.perf_counter() - start, check.claim)


def _iter_results(name: str, keys: list[dict[str, int]], jobs: int) -> Iterator[dict[str, Any]]:
    if jobs <= 1 or len(keys) < 2:
        for k in keys:
            yield _evaluate(name, k)
        return
    size = max(1, len(keys) // (jobs * 8))
    batches = [keys[s:s + size] for s in range(0, len(keys), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for batch in pool.map(_evaluate_batch, [name] * len(batches), batches):
            yield from batch
