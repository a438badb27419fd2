"""Certificate documents: canonical JSON text, parsing and batch re-verification.

Parsing is syntax-only.  Whether a parsed certificate is *correct* is decided
by :func:`kemperman.verify.verify_certificate`; nothing here touches the
classifier's search code.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ._version import __version__
from .errors import ElementRangeError, MalformedSetError, SchemaError
from .groups import Group, Subgroup, build_group, iter_bits
from .structures import Certificate, CertificateStep, Kind, StructureTag
from .trio import Similarity, Trio
from .verify import verify_certificate

SCHEMA_VERSION = 1
_STEP_FIELDS = {"universe", "A", "B", "C", "kind", "H", "R", "perm", "shift"}


def _elems(mask: int) -> list[int]:
    return list(iter_bits(mask))


def to_document(cert: Certificate, seed: Optional[int] = None, timestamp: Optional[str] = None) -> dict:
    steps = []
    for s in cert.steps:
        a, b, c = s.trio.masks
        rec = {
            "universe": _elems(s.universe.mask),
            "A": _elems(a),
            "B": _elems(b),
            "C": _elems(c),
            "kind": s.tag.kind.value,
            "H": _elems(s.tag.H.mask),
            "perm": list(s.tag.similarity.perm),
            "shift": list(s.tag.similarity.shift),
        }
        if s.tag.R is not None:
            rec["R"] = s.tag.R
        steps.append(rec)
    provenance = {"tool": f"kemperman {__version__}", "seed": seed}
    if timestamp is not None:
        provenance["timestamp"] = timestamp
    return {"schema": SCHEMA_VERSION, "group": cert.group.spec, "steps": steps, "provenance": provenance}


def render(cert: Certificate, seed: Optional[int] = None, timestamp: Optional[str] = None) -> str:
    """Canonical text: sorted keys, one line per top-level field and per step, LF endings.

    The timestamp is omitted unless given so that repeated runs are byte-identical.
    """
    doc = to_document(cert, seed, timestamp)
    fields = []
    for key, value in sorted(doc.items()):
        if key == "steps":
            body = ",\n".join("    " + json.dumps(s, sort_keys=True) for s in value)
            fields.append(f'  "steps": [\n{body}\n  ]')
        else:
            fields.append(f"  {json.dumps(key)}: {json.dumps(value, sort_keys=True)}")
    return "{\n" + ",\n".join(fields) + "\n}\n"


def _set_mask(G: Group, value, where: str) -> int:
    if not isinstance(value, list) or not all(type(v) is int for v in value):
        raise MalformedSetError(f"{where}: set must be a list of element indices")
    if any(x >= y for x, y in zip(value, value[1:])):
        raise MalformedSetError(f"{where}: element list must be strictly increasing")
    mask = 0
    for v in value:
        if not 0 <= v < G.order:
            raise ElementRangeError(f"{where}: element {v} out of range for {G.spec}")
        mask |= 1 << v
    return mask


def _int_triple(G: Group, value, where: str) -> tuple[int, int, int]:
    if not isinstance(value, list) or len(value) != 3 or not all(type(v) is int for v in value):
        raise SchemaError(f"{where}: expected a list of three integers")
    for v in value:
        if not 0 <= v < G.order:
            raise ElementRangeError(f"{where}: {v} out of range for {G.spec}")
    return tuple(value)


def parse(text: str) -> Certificate:
    """Rebuild a :class:`Certificate` from document text (no semantic checks)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not a JSON document: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r} (expected {SCHEMA_VERSION})")
    if not isinstance(doc.get("group"), str):
        raise SchemaError("missing group spec")
    try:
        G = build_group(doc["group"])
    except ValueError as e:
        raise SchemaError(f"bad group spec: {e}") from None
    raw = doc.get("steps")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("steps must be a nonempty list")
    steps = []
    for i, rec in enumerate(raw):
        where = f"step {i}"
        if not isinstance(rec, dict):
            raise SchemaError(f"{where}: step must be an object")
        missing = _STEP_FIELDS - {"R"} - rec.keys()
        extra = rec.keys() - _STEP_FIELDS
        if missing or extra:
            raise SchemaError(f"{where}: missing {sorted(missing)} / unexpected {sorted(extra)}")
        try:
            kind = Kind(rec["kind"])
        except ValueError:
            raise SchemaError(f"{where}: unknown kind {rec['kind']!r}") from None
        u = _set_mask(G, rec["universe"], f"{where}.universe")
        a, b, c = (_set_mask(G, rec[k], f"{where}.{k}") for k in "ABC")
        h = _set_mask(G, rec["H"], f"{where}.H")
        r = rec.get("R")
        if r is not None:
            if type(r) is not int:
                raise SchemaError(f"{where}.R must be an integer")
            if not 0 <= r < G.order:
                raise ElementRangeError(f"{where}.R: {r} out of range for {G.spec}")
        perm = rec["perm"]
        if not isinstance(perm, list) or sorted(perm) != [0, 1, 2] or not all(type(v) is int for v in perm):
            raise SchemaError(f"{where}.perm: expected a permutation of [0, 1, 2]")
        perm = tuple(perm)
        shift = _int_triple(G, rec["shift"], f"{where}.shift")
        trio = Trio.from_masks(G, a, b, c, u)
        steps.append(CertificateStep(trio, StructureTag(kind, Subgroup(G, h), r, Similarity(perm, shift))))
    return Certificate(tuple(steps))


@dataclass
class BatchSummary:
    ok: list[str] = field(default_factory=list)
    failed: list[tuple[str, str]] = field(default_factory=list)
    unreadable: list[tuple[str, str]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.ok) + len(self.failed) + len(self.unreadable)

    def lines(self) -> list[str]:
        out = [f"ok: {len(self.ok)}", f"failed: {len(self.failed)}", f"unreadable: {len(self.unreadable)}"]
        out += [f"FAILED {name}: {msg}" for name, msg in self.failed]
        out += [f"UNREADABLE {name}: {msg}" for name, msg in self.unreadable]
        return out


def _verify_file(path: str) -> tuple[str, str, str]:
    try:
        cert = parse(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, ValueError) as e:
        return "unreadable", path, str(e)
    verdict = verify_certificate(cert)
    return ("ok" if verdict.ok else "failed"), path, str(verdict)


def batch_verify(directory: str | Path, workers: int = 1) -> BatchSummary:
    """Verify every ``*.json`` document in ``directory`` (sorted by name)."""
    root = Path(directory)
    paths = sorted(str(p) for p in root.glob("*.json"))
    if workers > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_verify_file, paths))
    else:
        results = [_verify_file(p) for p in paths]
    summary = BatchSummary()
    for status, path, msg in results:
        name = Path(path).name
        if status == "ok":
            summary.ok.append(name)
        elif status == "failed":
            summary.failed.append((name, msg))
        else:
            summary.unreadable.append((name, msg))
    return summary
