"""Euclidean norms and polyhedral convex cones given by generator rays.

A ``PolyCone`` stores unit, deduplicated generator columns; the optional
outer description (inward facet normals) is either supplied and
cross-checked, or enumerated on demand for ambient dimension at most 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from . import kernels
from .errors import (
    DimensionMismatch,
    DimensionTooHigh,
    EmptyCone,
    NotSolid,
    TrivialRegion,
    ZeroGenerator,
)

# Pointedness margin on the generator hull: distances at or below this mean
# the hull of the normalized rays reaches the origin.
TOL_POINT = 1e-9
# Relative singular value cutoff used for rank decisions.
RANK_REL = 1e-10
# Rays whose cosine exceeds this collapse to a single generator.
DEDUP_COS = 1.0 - 1e-12
# Default membership tolerance (distance of x to the cone).
MEMBERSHIP_TOL = 1e-9
# Sign slack for facet normal tests.
FACET_TOL = 1e-10


class Norm(Enum):
    EUCLIDEAN = "euclidean"
    L1 = "l1"
    LINF = "linf"


def norm_value(x: np.ndarray, norm: Norm = Norm.EUCLIDEAN) -> float:
    x = np.asarray(x, dtype=float)
    if norm is Norm.EUCLIDEAN:
        return float(np.linalg.norm(x))
    if norm is Norm.L1:
        return float(np.abs(x).sum())
    return float(np.abs(x).max(initial=0.0))


def dual_norm(x_star: np.ndarray, norm: Norm = Norm.EUCLIDEAN) -> float:
    """Dual norm of a functional: l2 <-> l2, l1 <-> linf."""
    x_star = np.asarray(x_star, dtype=float)
    if norm is Norm.EUCLIDEAN:
        return float(np.linalg.norm(x_star))
    if norm is Norm.L1:
        return float(np.abs(x_star).max(initial=0.0))
    return float(np.abs(x_star).sum())


class PolyCone:
    """Convex polyhedral cone spanned by unit generator rays.

    Immutable after construction; use :func:`make_polycone`.
    """

    __slots__ = ("generators", "facet_normals", "_cache")

    def __init__(self, generators: np.ndarray, facet_normals: np.ndarray | None):
        self.generators = generators
        self.facet_normals = facet_normals
        self._cache: dict[str, object] = {}

    @property
    def dim(self) -> int:
        return self.generators.shape[0]

    @property
    def n_rays(self) -> int:
        return self.generators.shape[1]

    def __repr__(self) -> str:  # pragma: no cover
        return f"PolyCone(dim={self.dim}, rays={self.n_rays})"


@dataclass(frozen=True)
class PointednessResult:
    pointed: bool
    hull_distance: float
    witness: np.ndarray | None


@dataclass(frozen=True)
class BoundaryDecomposition:
    pieces: tuple[PolyCone, ...]
    normals: tuple[np.ndarray, ...]
    degenerate: bool


def make_polycone(generators, facets=None) -> PolyCone:
    """Build a cone from generator rays (one vector per row or sequence item).

    Rays are normalized and near-duplicates collapsed.  Supplied facet
    normals are validated against the generators and cross-checked on random
    sample points.
    """
    G = np.asarray(generators, dtype=float)
    if G.ndim == 1:
        G = G[None, :]
    if G.ndim != 2 or G.size == 0:
        raise EmptyCone("a cone needs at least one generator ray")
    norms = np.linalg.norm(G, axis=1)
    if np.any(norms <= 1e-300) or not np.all(np.isfinite(G)):
        raise ZeroGenerator("generator rays must be nonzero finite vectors")
    # vectors already unit to machine precision stay untouched, so that
    # serialized cones re-parse to the same bits (renormalizing can flip
    # the last ulp back and forth)
    scale = np.where(np.abs(norms - 1.0) <= 8 * np.finfo(float).eps, 1.0, norms)
    U = G / scale[:, None]
    kept: list[np.ndarray] = []
    for row in U:
        if not any(float(row @ other) >= DEDUP_COS for other in kept):
            kept.append(row)
    cols = np.stack(kept, axis=1)
    cols.setflags(write=False)

    normals = None
    if facets is not None:
        N = np.asarray(facets, dtype=float)
        if N.ndim == 1:
            N = N[None, :]
        if N.shape[1] != cols.shape[0]:
            raise DimensionMismatch("facet normals must match the ambient dimension")
        nn = np.linalg.norm(N, axis=1)
        if np.any(nn <= 1e-300):
            raise ZeroGenerator("facet normals must be nonzero")
        nsc = np.where(np.abs(nn - 1.0) <= 8 * np.finfo(float).eps, 1.0, nn)
        N = N / nsc[:, None]
        slack = (N @ cols).min(initial=0.0)
        if slack < -1e-8:
            raise NotSolid(
                "supplied facet normals exclude a generator (min slack %.3e)" % slack
            )
        N.setflags(write=False)
        normals = N

    cone = PolyCone(cols, normals)
    if normals is not None:
        _cross_check_facets(cone)
    return cone


def _cross_check_facets(cone: PolyCone, n_samples: int = 64) -> None:
    """Sampled agreement between the generator and facet descriptions."""
    rng = np.random.default_rng(7)
    d = cone.dim
    X = rng.standard_normal((n_samples, d))
    X /= np.linalg.norm(X, axis=1)[:, None]
    inside_h = (X @ cone.facet_normals.T).min(axis=1) >= -1e-9
    for x, h in zip(X, inside_h):
        v = cone_membership(x, cone)
        if v != bool(h):
            raise NotSolid(
                "facet normals disagree with the generator description at a sample"
            )


def cone_membership(x, cone: PolyCone, tol: float = MEMBERSHIP_TOL) -> bool:
    """True iff the distance from x to the cone is at most tol (via NNLS)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (cone.dim,):
        raise DimensionMismatch("point dimension does not match the cone")
    res = kernels.nnls(cone.generators, x)
    return res.residual <= tol * max(1.0, float(np.linalg.norm(x)))


def _span_basis(cone: PolyCone) -> np.ndarray:
    """Orthonormal basis (d, r) of the linear span of the generators."""
    b = cone._cache.get("span")
    if b is None:
        U, s, _ = np.linalg.svd(cone.generators, full_matrices=False)
        r = int(np.sum(s > RANK_REL * s[0])) if s.size else 0
        b = U[:, :r]
        cone._cache["span"] = b
    return b


def solidity(cone: PolyCone) -> bool:
    """True iff the cone has nonempty interior (generators span the space)."""
    return _span_basis(cone).shape[1] == cone.dim


def pointedness(cone: PolyCone) -> PointednessResult:
    """Decide pointedness via the distance from 0 to conv(normalized rays).

    When the hull reaches the origin, the zero convex combination yields a
    witness ray x with both x and -x in the cone.
    """
    res = kernels.min_norm_point(cone.generators.T)
    dist = res.norm
    if dist > TOL_POINT:
        return PointednessResult(True, dist, None)
    k = int(np.argmax(res.weights))
    return PointednessResult(False, dist, cone.generators[:, k].copy())


def is_whole_space(cone: PolyCone) -> bool:
    """True iff the cone equals the ambient space."""
    v = cone._cache.get("whole")
    if v is None:
        v = solidity(cone) and all(
            cone_membership(sgn * e, cone)
            for e in np.eye(cone.dim)
            for sgn in (1.0, -1.0)
        )
        cone._cache["whole"] = v
    return bool(v)


def _null_direction(A: np.ndarray) -> np.ndarray | None:
    """Unit vector orthogonal to the rows of A when rank(A) == rows(A)."""
    k, d = A.shape
    if k == 0:
        return None
    _, s, Vt = np.linalg.svd(A)
    if s.size < k or s[k - 1] <= RANK_REL * max(1.0, s[0]):
        return None
    return Vt[d - 1]


def _enumerate_facet_normals(points: np.ndarray) -> list[np.ndarray]:
    """Inward facet normals of cone(columns) in its own (solid) space.

    Classic subset enumeration: every facet of a finitely generated solid
    cone is spanned by d-1 linearly independent generators, so its normal
    shows up as the null direction of some (d-1)-subset with all generators
    on one side.
    """
    d, n = points.shape
    found: list[np.ndarray] = []
    if d == 1:
        signs = points[0]
        if signs.min() > 0:
            return [np.array([1.0])]
        if signs.max() < 0:
            return [np.array([-1.0])]
        return []
    for subset in combinations(range(n), d - 1):
        nrm = _null_direction(points[:, subset].T)
        if nrm is None:
            continue
        s = points.T @ nrm
        if s.min() >= -FACET_TOL:
            cand = nrm
        elif s.max() <= FACET_TOL:
            cand = -nrm
        else:
            continue
        if not any(float(cand @ f) >= 1.0 - 1e-9 for f in found):
            found.append(cand)
    return found


def facet_normals(cone: PolyCone) -> np.ndarray:
    """Inward facet normals (m, d) of a solid proper cone, d <= 4."""
    cached = cone._cache.get("facet_normals")
    if cached is not None:
        return cached
    if cone.facet_normals is not None:
        cone._cache["facet_normals"] = cone.facet_normals
        return cone.facet_normals
    if not solidity(cone):
        raise NotSolid("facet enumeration needs a solid cone")
    if is_whole_space(cone):
        raise TrivialRegion("the whole space has no facets")
    if cone.dim > 4:
        raise DimensionTooHigh(
            "facet enumeration is limited to dimension <= 4; supply facets"
        )
    normals = _enumerate_facet_normals(cone.generators)
    N = np.stack(normals, axis=0)
    N.setflags(write=False)
    cone._cache["facet_normals"] = N
    return N


def facets(cone: PolyCone) -> BoundaryDecomposition:
    """Boundary decomposition into facet cones.

    A non-solid cone is its own boundary and is returned as a single piece
    with the ``degenerate`` flag set.
    """
    cached = cone._cache.get("facets")
    if cached is not None:
        return cached
    if not solidity(cone):
        out = BoundaryDecomposition(pieces=(cone,), normals=(), degenerate=True)
        cone._cache["facets"] = out
        return out
    N = facet_normals(cone)
    pieces = []
    for nrm in N:
        on = np.abs(nrm @ cone.generators) <= 1e-9
        if not on.any():
            raise NotSolid("facet normal with no incident generators")
        pieces.append(make_polycone(cone.generators[:, on].T))
    out = BoundaryDecomposition(
        pieces=tuple(pieces),
        normals=tuple(np.array(n) for n in N),
        degenerate=False,
    )
    cone._cache["facets"] = out
    return out


def _inspan_hrep(cone: PolyCone):
    """(basis, normals-in-span | None) for fast vectorized membership.

    ``normals`` is None when the cone fills its span, in which case only the
    span residual decides membership.
    """
    cached = cone._cache.get("hrep")
    if cached is not None:
        return cached
    B = _span_basis(cone)
    coords = B.T @ cone.generators
    r = B.shape[1]
    if r <= 4:
        normals = _enumerate_facet_normals(coords)
        N = np.stack(normals, axis=0) if normals else None
    else:
        N = "nnls"  # fall back to per-point NNLS above dimension 4
    cone._cache["hrep"] = (B, N)
    return B, N


def contains_batch(cone: PolyCone, X: np.ndarray, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """Vectorized membership for points given as rows of X."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.shape[1] != cone.dim:
        raise DimensionMismatch("point dimension does not match the cone")
    B, N = _inspan_hrep(cone)
    if isinstance(N, str):
        return np.array([cone_membership(x, cone, tol) for x in X])
    coords = X @ B
    resid = np.linalg.norm(X - coords @ B.T, axis=1)
    scale = np.maximum(1.0, np.linalg.norm(X, axis=1))
    ok = resid <= tol * scale
    if N is not None:
        ok &= (coords @ N.T).min(axis=1, initial=np.inf) >= -tol * scale
    return ok


def strictly_interior(cone: PolyCone, x, tol: float = MEMBERSHIP_TOL) -> bool:
    """True iff x lies in the topological interior of a solid cone."""
    x = np.asarray(x, dtype=float)
    if not solidity(cone):
        return False
    if is_whole_space(cone):
        return True
    N = facet_normals(cone)
    scale = max(1.0, float(np.linalg.norm(x)))
    return float((N @ x).min()) > tol * scale
