"""Cosine-normalized similarity graphs over citation profiles.

Citation counts are size-dependent, so raw profiles are normalized with the
vector-space cosine before journals are compared.  Edges below (or at) the
visualization threshold are dropped; the inequality is strict, mirroring the
contribution rule used for environment membership.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from .environment import Direction, SeedEnvironment
from .errors import UndefinedSimilarityError, ZeroVarianceError
from .matrix import CitationMatrix, JournalId, col_profile, row_profile

logger = logging.getLogger(__name__)


def cosine(x: Sequence[float], y: Sequence[float]) -> float:
    """Cosine of the angle between two vectors.

    For nonnegative vectors the result lies in [0, 1]; 1.0 for parallel
    vectors, 0.0 for orthogonal ones.  Summation order is fixed, so repeated
    calls are bit-identical.

    Raises ``ValueError`` on a length mismatch or empty input, and
    :class:`UndefinedSimilarityError` for an all-zero vector (the similarity
    is undefined, never silently 0).
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) == 0:
        raise ValueError("vectors must have at least one entry")
    norm_x_sq = math.fsum(v * v for v in x)
    norm_y_sq = math.fsum(v * v for v in y)
    if norm_x_sq == 0.0:
        raise UndefinedSimilarityError("first vector is all-zero")
    if norm_y_sq == 0.0:
        raise UndefinedSimilarityError("second vector is all-zero")
    dot = math.fsum(xv * yv for xv, yv in zip(x, y))
    value = dot / math.sqrt(norm_x_sq * norm_y_sq)
    # Guard against float overshoot at the Cauchy-Schwarz bound.
    return max(-1.0, min(1.0, value))


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation, for side-by-side comparison with cosine.

    Unlike the cosine, values are centered on their arithmetic mean first,
    so the result is translation-invariant and lies in [-1, 1].

    Raises :class:`ZeroVarianceError` when either vector is constant.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValueError("vectors must have at least two entries")
    mean_x = math.fsum(x) / len(x)
    mean_y = math.fsum(y) / len(y)
    dev_x = [v - mean_x for v in x]
    dev_y = [v - mean_y for v in y]
    var_x = math.fsum(v * v for v in dev_x)
    var_y = math.fsum(v * v for v in dev_y)
    if var_x == 0.0:
        raise ZeroVarianceError("first vector has zero variance")
    if var_y == 0.0:
        raise ZeroVarianceError("second vector has zero variance")
    cov = math.fsum(a * b for a, b in zip(dev_x, dev_y))
    return max(-1.0, min(1.0, cov / math.sqrt(var_x * var_y)))


@dataclass(frozen=True)
class SimilarityGraph:
    """Undirected cosine-weighted graph over environment members.

    Edges are keyed ``(u, v)`` with u before v in node order; every stored
    weight strictly exceeds ``threshold``.  ``basis`` records which profile
    direction was compared.  Members whose profile was all-zero stay in
    ``nodes`` as isolated vertices and are listed in ``warnings``.
    """

    nodes: tuple[JournalId, ...]
    edges: Mapping[tuple[JournalId, JournalId], float]
    threshold: float
    basis: Direction
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", MappingProxyType(dict(self.edges)))

    def weight(self, u: JournalId, v: JournalId) -> float | None:
        """Edge weight between two nodes, or None when no edge is stored."""
        return self.edges.get((u, v), self.edges.get((v, u)))


def _profiles(
    env: SeedEnvironment,
    direction: Direction,
    source: CitationMatrix,
    axes: Sequence[JournalId],
) -> dict[JournalId, list[int]]:
    profiles = {}
    axis_index = {journal_id: k for k, journal_id in enumerate(axes)}
    for member in env.members:
        if direction is Direction.CITED:
            vector = col_profile(source, member, axes)
        else:
            vector = row_profile(source, member, axes)
        # Self-citations are displayed by the node glyphs, not compared here.
        own = axis_index.get(member)
        if own is not None:
            vector[own] = 0
        profiles[member] = vector
    return profiles


def similarity_graph(
    env: SeedEnvironment,
    threshold: float,
    *,
    direction: Direction | None = None,
    full_matrix: CitationMatrix | None = None,
) -> SimilarityGraph:
    """Build the cosine similarity graph over an environment's members.

    Member profiles are compared along the environment member list as
    coordinate axes, with each member's own diagonal (self-citation) entry
    zeroed first.  An edge is stored iff its cosine strictly exceeds
    *threshold*.

    *direction* overrides the profile basis (default: the environment's own
    direction).  Passing *full_matrix* switches the coordinate axes to the
    full journal set of that matrix, for sensitivity analysis.
    """
    if len(env.members) < 2:
        raise ValueError("environment must have at least 2 members")
    if not 0.0 <= threshold < 1.0:
        raise ValueError(f"threshold must be in [0, 1), got {threshold}")
    basis = env.direction if direction is None else direction

    if full_matrix is None:
        source: CitationMatrix = env.submatrix
        axes: Sequence[JournalId] = env.members
    else:
        source = full_matrix
        axes = sorted(full_matrix.journals)

    profiles = _profiles(env, basis, source, axes)
    zero_members = [m for m in env.members if not any(profiles[m])]
    warnings = tuple(
        f"member {m!r} has an all-zero {basis.value} profile; kept as isolated node"
        for m in zero_members
    )
    for message in warnings:
        logger.warning(message)
    comparable = set(env.members) - set(zero_members)

    edges: dict[tuple[JournalId, JournalId], float] = {}
    for i, u in enumerate(env.members):
        if u not in comparable:
            continue
        for v in env.members[i + 1 :]:
            if v not in comparable:
                continue
            value = cosine(profiles[u], profiles[v])
            if value > threshold:
                edges[(u, v)] = value
    return SimilarityGraph(env.members, edges, threshold, basis, warnings)
