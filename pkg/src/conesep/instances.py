"""Instance and certificate documents: strict JSON in, canonical JSON out.

An instance names a dimension, a norm, and a map of cone regions; every
region is a list of generator pieces combined as a single convex piece, a
union, a complement, or a boundary.  Parsing is strict -- unknown fields are
errors, not warnings -- and serialization is canonical (sorted names, unit
generators, shortest round-trip float rendering), so parse-serialize-parse
is the identity on canonical documents.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .errors import InstanceError
from .geometry import Norm, PolyCone
from .regions import ConeRegion
from .separation import Orientation, SeparationCertificate

_REGION_KINDS = ("convex", "union", "complement", "boundary")

_TOP_KEYS = {"dim", "norm", "cones", "options"}
_CONE_KEYS = {"kind", "pieces"}
_PIECE_KEYS = {"generators", "facets"}
_OPTION_KEYS = {"tol", "verify_samples", "seed", "resolution"}


@dataclass(frozen=True)
class InstanceOptions:
    tol: float = 1e-9
    verify_samples: int = 1000
    seed: int = 0
    resolution: float = 0.25


@dataclass(frozen=True, eq=False)
class Instance:
    dim: int
    norm: Norm
    regions: dict[str, ConeRegion]
    kinds: dict[str, str]
    options: InstanceOptions = field(default_factory=InstanceOptions)

    def region(self, name: str) -> ConeRegion:
        if name not in self.regions:
            raise InstanceError(f"instance has no cone named {name!r}")
        return self.regions[name]


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise InstanceError(
            f"unknown field {sorted(unknown)[0]!r} in {where}"
        )


def _matrix(raw, where: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{where}: not a numeric matrix ({exc})") from None
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise InstanceError(f"{where}: expected a non-empty list of vectors")
    return arr


def _build_piece(raw: dict, dim: int, where: str) -> PolyCone:
    if not isinstance(raw, dict):
        raise InstanceError(f"{where}: a piece must be a mapping")
    _check_keys(raw, _PIECE_KEYS, where)
    if "generators" not in raw:
        raise InstanceError(f"{where}: a piece needs generators")
    gens = _matrix(raw["generators"], f"{where}.generators")
    if gens.shape[1] != dim:
        raise InstanceError(
            f"{where}.generators: vectors have length {gens.shape[1]}, dim is {dim}"
        )
    facets = None
    if "facets" in raw:
        facets = _matrix(raw["facets"], f"{where}.facets")
        if facets.shape[1] != dim:
            raise InstanceError(f"{where}.facets: wrong vector length")
    return geometry.make_polycone(gens, facets=facets)


def _build_region(name: str, raw: dict, dim: int) -> tuple[ConeRegion, str]:
    where = f"cones.{name}"
    if not isinstance(raw, dict):
        raise InstanceError(f"{where}: a cone entry must be a mapping")
    _check_keys(raw, _CONE_KEYS, where)
    kind = raw.get("kind", "convex")
    if kind not in _REGION_KINDS:
        raise InstanceError(f"{where}.kind: {kind!r} is not one of {_REGION_KINDS}")
    pieces_raw = raw.get("pieces")
    if not isinstance(pieces_raw, list) or not pieces_raw:
        raise InstanceError(f"{where}.pieces: expected a non-empty list")
    pieces = [
        _build_piece(p, dim, f"{where}.pieces[{i}]") for i, p in enumerate(pieces_raw)
    ]
    if kind in ("convex", "complement", "boundary") and len(pieces) != 1:
        raise InstanceError(f"{where}: kind {kind!r} takes exactly one piece")
    if kind == "convex":
        return ConeRegion.piece(pieces[0]), kind
    if kind == "union":
        return ConeRegion.union(*[ConeRegion.piece(p) for p in pieces]), kind
    if kind == "complement":
        return ConeRegion.complement(pieces[0]), kind
    return ConeRegion.boundary(pieces[0]), kind


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise InstanceError("top level must be a mapping")
    _check_keys(doc, _TOP_KEYS, "the top level")
    if "dim" not in doc or "cones" not in doc:
        raise InstanceError("instance needs 'dim' and 'cones'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InstanceError("'dim' must be a positive integer")
    norm_name = doc.get("norm", "euclidean")
    try:
        norm = Norm(norm_name)
    except ValueError:
        raise InstanceError(f"unknown norm {norm_name!r}") from None
    cones = doc["cones"]
    if not isinstance(cones, dict) or not cones:
        raise InstanceError("'cones' must be a non-empty mapping")
    regions: dict[str, ConeRegion] = {}
    kinds: dict[str, str] = {}
    for name, raw in cones.items():
        regions[name], kinds[name] = _build_region(name, raw, dim)
    opts_raw = doc.get("options", {})
    if not isinstance(opts_raw, dict):
        raise InstanceError("'options' must be a mapping")
    _check_keys(opts_raw, _OPTION_KEYS, "options")
    options = InstanceOptions(
        tol=float(opts_raw.get("tol", 1e-9)),
        verify_samples=int(opts_raw.get("verify_samples", 1000)),
        seed=int(opts_raw.get("seed", 0)),
        resolution=float(opts_raw.get("resolution", 0.25)),
    )
    return Instance(dim=dim, norm=norm, regions=regions, kinds=kinds,
                    options=options)


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InstanceError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_instance(text)
    except InstanceError as exc:
        raise InstanceError(f"{path}: {exc}") from None


def _region_doc(region: ConeRegion, kind: str) -> dict:
    from .regions import _BoundaryLeaf, _ComplementLeaf, _PieceLeaf

    pieces = []
    for leaf in region.leaves:
        if isinstance(leaf, (_ComplementLeaf, _BoundaryLeaf)):
            cone = leaf.cone
        else:
            assert isinstance(leaf, _PieceLeaf)
            cone = leaf.cone
        piece = {"generators": cone.generators.T.tolist()}
        if cone.facet_normals is not None:
            piece["facets"] = cone.facet_normals.T.tolist()
        pieces.append(piece)
    return {"kind": kind, "pieces": pieces}


def serialize_instance(inst: Instance) -> str:
    doc = {
        "dim": inst.dim,
        "norm": inst.norm.value,
        "cones": {
            name: _region_doc(inst.regions[name], inst.kinds[name])
            for name in sorted(inst.regions)
        },
        "options": {
            "tol": inst.options.tol,
            "verify_samples": inst.options.verify_samples,
            "seed": inst.options.seed,
            "resolution": inst.options.resolution,
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Certificate documents
# ---------------------------------------------------------------------------

def jsonable(value):
    """Recursively convert numpy scalars/arrays so json.dumps renders them
    with shortest round-trip precision."""
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    return value


def certificate_to_doc(cert: SeparationCertificate) -> dict:
    return {
        "orientation": cert.orientation.value,
        "x_star": jsonable(cert.x_star),
        "alpha": float(cert.alpha),
        "alpha_interval": [float(cert.alpha_interval[0]),
                           float(cert.alpha_interval[1])],
        "distance": float(cert.distance),
        "witnesses": [jsonable(cert.witnesses[0]), jsonable(cert.witnesses[1])],
        "family": sorted(cert.family),
        "iterations": int(cert.iterations),
    }


def doc_to_certificate(doc: dict) -> SeparationCertificate:
    try:
        return SeparationCertificate(
            orientation=Orientation(doc["orientation"]),
            x_star=np.asarray(doc["x_star"], dtype=float),
            alpha=float(doc["alpha"]),
            alpha_interval=(float(doc["alpha_interval"][0]),
                            float(doc["alpha_interval"][1])),
            distance=float(doc["distance"]),
            witnesses=(np.asarray(doc["witnesses"][0], dtype=float),
                       np.asarray(doc["witnesses"][1], dtype=float)),
            family=frozenset(doc.get("family", [])),
            iterations=int(doc.get("iterations", 0)),
        )
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed certificate document: {exc}") from None


def load_certificate(path: str) -> SeparationCertificate:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InstanceError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InstanceError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if isinstance(doc, dict) and "certificate" in doc and isinstance(
            doc["certificate"], dict):
        doc = doc["certificate"]
    return doc_to_certificate(doc)
