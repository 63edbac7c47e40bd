"""Polygon documents: canonical JSON serialization and loading.

Schema (one JSON object, UTF-8, newline-terminated, fixed key order):

    {"kind": "ordinary-reduced" | "polygon",
     "model": "hyperboloid" | "poincare",
     "w": <float>,
     "vertices": [[x0, x1, x2], ...]   (or [[x, y], ...] for "poincare"),
     "phis": [<float>, ...] | null,
     "metadata": {<str>: <str>, ...}}

Floats serialize via Python's shortest-roundtrip repr (max 17 significant
digits), so save -> load -> save is byte-identical.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedDocument
from .geometry import HPoint, from_poincare, mdot, normalize_point, to_poincare
from .polygon import ConvexPolygon

ONSHEET_TOL = 1e-9  # |<p,p> + 1| allowed for stored hyperboloid vertices

KINDS = ("ordinary-reduced", "polygon")
MODELS = ("hyperboloid", "poincare")


@dataclass(frozen=True)
class PolygonDocument:
    kind: str
    model: str
    w: float
    vertices: tuple
    phis: tuple | None = None
    metadata: dict = field(default_factory=dict)


def document_from_vertices(vertices, w, kind="polygon", phis=None, metadata=None):
    """Document in hyperboloid coordinates from HPoints in cyclic order."""
    verts = tuple(tuple(float(c) for c in v.coords) for v in vertices)
    return PolygonDocument(kind, "hyperboloid", float(w), verts,
                           None if phis is None else tuple(float(p) for p in phis),
                           dict(metadata or {}))


def document_from_reduced(orp, metadata=None):
    return document_from_vertices(orp.polygon.vertices, orp.w,
                                  kind="ordinary-reduced",
                                  phis=[bf.phi for bf in orp.butterflies],
                                  metadata=metadata)


def to_json(doc: PolygonDocument) -> str:
    payload = {
        "kind": doc.kind,
        "model": doc.model,
        "w": doc.w,
        "vertices": [list(v) for v in doc.vertices],
        "phis": None if doc.phis is None else list(doc.phis),
        "metadata": {k: doc.metadata[k] for k in sorted(doc.metadata)},
    }
    return json.dumps(payload, ensure_ascii=False, separators=(", ", ": ")) + "\n"


def from_json(text: str) -> PolygonDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise MalformedDocument("top level must be an object")
    missing = {"kind", "model", "w", "vertices"} - raw.keys()
    if missing:
        raise MalformedDocument(f"missing fields: {sorted(missing)}")
    kind, model = raw["kind"], raw["model"]
    if kind not in KINDS:
        raise MalformedDocument(f"unknown kind {kind!r}")
    if model not in MODELS:
        raise MalformedDocument(f"unknown model {model!r}")

    w = raw["w"]
    if not isinstance(w, (int, float)) or not math.isfinite(w) or w <= 0.0:
        raise MalformedDocument(f"w must be a positive finite number, got {w!r}")

    verts = raw["vertices"]
    dim = 3 if model == "hyperboloid" else 2
    if (not isinstance(verts, list) or len(verts) < 3
            or any(not isinstance(v, list) or len(v) != dim for v in verts)):
        raise MalformedDocument(f"vertices must be a list of {dim}-vectors")
    flat = [c for v in verts for c in v]
    if any(not isinstance(c, (int, float)) or not math.isfinite(c) for c in flat):
        raise MalformedDocument("vertex coordinates must be finite numbers")

    if kind == "ordinary-reduced" and len(verts) % 2 == 0:
        raise MalformedDocument("ordinary-reduced documents need an odd vertex count")

    if model == "hyperboloid":
        for i, v in enumerate(verts):
            arr = np.array(v, dtype=float)
            if abs(mdot(arr, arr) + 1.0) > ONSHEET_TOL or arr[0] <= 0.0:
                raise MalformedDocument(
                    f"vertex {i} is off the hyperboloid: <p,p> = {mdot(arr, arr)}")
    else:
        for i, v in enumerate(verts):
            if v[0] ** 2 + v[1] ** 2 >= 1.0:
                raise MalformedDocument(f"vertex {i} is outside the unit disk")

    phis = raw.get("phis")
    if phis is not None:
        if (not isinstance(phis, list) or len(phis) != len(verts)
                or any(not isinstance(p, (int, float)) or not math.isfinite(p)
                       for p in phis)):
            raise MalformedDocument("phis must be null or one finite number per vertex")
        phis = tuple(float(p) for p in phis)

    metadata = raw.get("metadata") or {}
    if not isinstance(metadata, dict) or any(
            not isinstance(k, str) or not isinstance(v, str)
            for k, v in metadata.items()):
        raise MalformedDocument("metadata must map strings to strings")

    return PolygonDocument(kind, model, float(w),
                           tuple(tuple(float(c) for c in v) for v in verts),
                           phis, dict(metadata))


def save(doc: PolygonDocument, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_json(doc))


def load(path) -> PolygonDocument:
    with open(path, encoding="utf-8") as fh:
        return from_json(fh.read())


def vertices_as_hpoints(doc: PolygonDocument):
    """Vertices as validated HPoints (converting from disk coordinates, and
    renormalizing stored hyperboloid coordinates onto the sheet)."""
    if doc.model == "poincare":
        return [from_poincare(np.array(v)) for v in doc.vertices]
    return [normalize_point(np.array(v, dtype=float)) for v in doc.vertices]


def as_polygon(doc: PolygonDocument) -> ConvexPolygon:
    """The document's polygon, preserving the stored cyclic vertex order."""
    return ConvexPolygon(vertices_as_hpoints(doc))


def as_poincare_document(doc: PolygonDocument) -> PolygonDocument:
    """Model conversion hyperboloid -> poincare (vertices only)."""
    pts = vertices_as_hpoints(doc)
    verts = tuple(tuple(float(c) for c in to_poincare(p)) for p in pts)
    return PolygonDocument(doc.kind, "poincare", doc.w, verts, doc.phis,
                           dict(doc.metadata))
