"""Cone regions and the convex bodies spanned by their norm-bases.

A region denotes a (possibly nonconvex) cone assembled from convex
polyhedral leaves: single pieces, finite unions, the closed complement
(X \\ K) united with {0}, and the boundary of a solid cone.  All analytic
access goes through the linear minimization oracle (LMO) over the closure
of the region's norm-base B = region intersect unit sphere; the convex body
used by the distance engine is conv(B), optionally with the origin adjoined
(the S vs S0 hull of the base).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry, kernels
from .errors import (
    DimensionMismatch,
    NotConvex,
    NotSolid,
    TrivialRegion,
    ZeroDirection,
)
from .geometry import PolyCone

# Projections with norm below this (relative to the direction) count as zero,
# i.e. the direction is taken to lie in the dual cone.
PROJ_ZERO_TOL = 1e-11


@dataclass(frozen=True)
class LmoResult:
    value: float
    witness: np.ndarray


class _PieceLeaf:
    __slots__ = ("cone",)

    def __init__(self, cone: PolyCone):
        self.cone = cone

    @property
    def dim(self) -> int:
        return self.cone.dim

    def lmo(self, f: np.ndarray) -> LmoResult:
        return _lmo_piece(self.cone, f)

    def contains_unit_batch(self, X: np.ndarray, tol: float) -> np.ndarray:
        return geometry.contains_batch(self.cone, X, tol)

    def anchor_points(self) -> np.ndarray:
        return self.cone.generators.T

    def centroid(self) -> np.ndarray:
        return self.cone.generators.mean(axis=1)


class _BoundaryLeaf:
    __slots__ = ("cone", "pieces", "degenerate")

    def __init__(self, cone: PolyCone):
        dec = geometry.facets(cone)
        self.cone = cone
        self.pieces = dec.pieces
        self.degenerate = dec.degenerate

    @property
    def dim(self) -> int:
        return self.cone.dim

    def lmo(self, f: np.ndarray) -> LmoResult:
        return min(
            (_lmo_piece(p, f) for p in self.pieces), key=lambda r: r.value
        )

    def contains_unit_batch(self, X: np.ndarray, tol: float) -> np.ndarray:
        ok = np.zeros(X.shape[0], dtype=bool)
        for p in self.pieces:
            ok |= geometry.contains_batch(p, X, tol)
        return ok

    def anchor_points(self) -> np.ndarray:
        return np.concatenate([p.generators.T for p in self.pieces], axis=0)

    def centroid(self) -> np.ndarray:
        return self.anchor_points().mean(axis=0)


class _ComplementLeaf:
    __slots__ = ("cone", "facet_pieces")

    def __init__(self, cone: PolyCone):
        if not geometry.solidity(cone):
            # The complement of a non-solid cone has the whole sphere in its
            # closure; the body degenerates to the unit ball.
            raise NotSolid("complement regions need a solid excluded cone")
        if geometry.is_whole_space(cone):
            raise TrivialRegion("cannot take the complement of the whole space")
        dec = geometry.facets(cone)
        self.cone = cone
        self.facet_pieces = dec.pieces

    @property
    def dim(self) -> int:
        return self.cone.dim

    def lmo(self, f: np.ndarray) -> LmoResult:
        # The closure of the base is (sphere minus interior of K): the free
        # minimizer -f/|f| wins unless it is interior to K, in which case the
        # minimum sits on the boundary of K.
        fn = float(np.linalg.norm(f))
        u = -f / fn
        if not geometry.strictly_interior(self.cone, u):
            return LmoResult(-fn, u)
        return min(
            (_lmo_piece(p, f) for p in self.facet_pieces), key=lambda r: r.value
        )

    def contains_unit_batch(self, X: np.ndarray, tol: float) -> np.ndarray:
        N = geometry.facet_normals(self.cone)
        scale = np.maximum(1.0, np.linalg.norm(X, axis=1))
        return (X @ N.T).min(axis=1) <= tol * scale

    def anchor_points(self) -> np.ndarray:
        return np.concatenate([p.generators.T for p in self.facet_pieces], axis=0)

    def centroid(self) -> np.ndarray:
        return -self.cone.generators.mean(axis=1)


class ConeRegion:
    """Union-of-leaves view of a cone region; LMO = min over the leaves."""

    __slots__ = ("leaves", "dim")

    def __init__(self, leaves):
        leaves = tuple(leaves)
        if not leaves:
            raise TrivialRegion("a region needs at least one leaf")
        dim = leaves[0].dim
        if any(leaf.dim != dim for leaf in leaves):
            raise DimensionMismatch("region leaves live in different dimensions")
        self.leaves = leaves
        self.dim = dim

    # -- constructors -----------------------------------------------------
    @staticmethod
    def piece(cone: PolyCone) -> "ConeRegion":
        return ConeRegion([_PieceLeaf(cone)])

    @staticmethod
    def union(*parts: "ConeRegion") -> "ConeRegion":
        leaves = []
        for part in parts:
            leaves.extend(part.leaves)
        return ConeRegion(leaves)

    @staticmethod
    def complement(cone: PolyCone) -> "ConeRegion":
        return ConeRegion([_ComplementLeaf(cone)])

    @staticmethod
    def boundary(cone: PolyCone) -> "ConeRegion":
        return ConeRegion([_BoundaryLeaf(cone)])

    # -- structure --------------------------------------------------------
    @property
    def is_single_piece(self) -> bool:
        return len(self.leaves) == 1 and isinstance(self.leaves[0], _PieceLeaf)

    def single_cone(self) -> PolyCone:
        if not self.is_single_piece:
            raise NotConvex("a single convex piece is required here")
        return self.leaves[0].cone

    def piece_cones(self) -> list[PolyCone]:
        """Cones of plain piece leaves (boundary/complement leaves excluded)."""
        return [leaf.cone for leaf in self.leaves if isinstance(leaf, _PieceLeaf)]

    @property
    def has_compound_leaves(self) -> bool:
        return any(not isinstance(leaf, _PieceLeaf) for leaf in self.leaves)

    # -- analytic access ---------------------------------------------------
    def lmo(self, direction) -> LmoResult:
        f = np.asarray(direction, dtype=float)
        if f.shape != (self.dim,):
            raise DimensionMismatch("direction dimension does not match the region")
        if float(np.linalg.norm(f)) <= 1e-300:
            raise ZeroDirection("LMO needs a nonzero direction")
        return min((leaf.lmo(f) for leaf in self.leaves), key=lambda r: r.value)

    def contains_unit_batch(self, X, tol: float = geometry.MEMBERSHIP_TOL) -> np.ndarray:
        """Membership of unit vectors in the closure of the region's base."""
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        ok = np.zeros(X.shape[0], dtype=bool)
        for leaf in self.leaves:
            ok |= leaf.contains_unit_batch(X, tol)
        return ok

    def anchor_points(self) -> np.ndarray:
        """Unit rays guaranteed to lie in the base closure (leaf generators)."""
        return np.concatenate([leaf.anchor_points() for leaf in self.leaves], axis=0)

    def centroid(self) -> np.ndarray:
        c = np.mean([leaf.centroid() for leaf in self.leaves], axis=0)
        return c


def _lmo_piece(cone: PolyCone, f: np.ndarray) -> LmoResult:
    """Exact LMO over the norm-base of a convex piece.

    Dichotomy: if the projection p of -f onto the cone is nonzero, the
    minimum of <f, x> over unit x in the cone equals -|p| at p/|p|; otherwise
    f lies in the dual cone and the minimum is attained at a unit extreme
    ray, hence at a stored generator (triangle inequality argument).
    """
    proj = kernels.project_onto_cone(cone.generators, -f)
    pn = proj.norm
    if pn > PROJ_ZERO_TOL * max(1.0, float(np.linalg.norm(f))):
        w = proj.point / pn
        return LmoResult(-pn, w)
    vals = f @ cone.generators
    j = int(np.argmin(vals))
    return LmoResult(float(vals[j]), cone.generators[:, j].copy())


def lmo_norm_base(region: ConeRegion, direction) -> LmoResult:
    """min over cl(B_region) of <direction, x> with an attaining witness."""
    return region.lmo(direction)


def support_norm_base(region: ConeRegion, functional) -> LmoResult:
    """sup over cl(B_region) of <functional, x> with an attaining witness."""
    f = np.asarray(functional, dtype=float)
    res = region.lmo(-f)
    return LmoResult(-res.value, res.witness)


@dataclass(frozen=True)
class ConvexBody:
    """conv(base closure), with the origin optionally adjoined (S vs S0)."""

    region: ConeRegion
    adjoin_origin: bool

    @property
    def dim(self) -> int:
        return self.region.dim

    def lmo(self, direction) -> LmoResult:
        res = self.region.lmo(direction)
        if self.adjoin_origin and res.value > 0.0:
            return LmoResult(0.0, np.zeros(self.dim))
        return res

    def support(self, functional) -> LmoResult:
        f = np.asarray(functional, dtype=float)
        res = self.lmo(-f)
        return LmoResult(-res.value, res.witness)

    def centroid(self) -> np.ndarray:
        return self.region.centroid()


def body(region: ConeRegion, adjoin_origin: bool) -> ConvexBody:
    return ConvexBody(region, adjoin_origin)
