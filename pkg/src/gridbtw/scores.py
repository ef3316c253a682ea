from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import AlreadyNormalized, NormalizeTooSmall


class Convention(str, enum.Enum):
    """How the unordered pairs of an undirected graph are counted.

    ``DIRECTED_SUM`` treats every node as a source, so each pair contributes
    from both endpoints. ``PAIR_ONCE`` halves that. On the IEEE 118-bus
    system pair-once reproduces the published bus and branch values, so it is
    the default.
    """

    DIRECTED_SUM = "directed-sum"
    PAIR_ONCE = "pair-once"

    def __str__(self):
        return self.value


DEFAULT_CONVENTION = Convention.PAIR_ONCE


@dataclass(frozen=True)
class ScoreTable:
    node_scores: np.ndarray
    edge_scores: Optional[np.ndarray]
    convention: Convention
    normalized: bool = False

    @property
    def node_count(self) -> int:
        return len(self.node_scores)


def apply_convention(values: np.ndarray, convention: Convention) -> np.ndarray:
    """Kernels always produce directed sums; scale to the requested convention."""
    if Convention(convention) is Convention.PAIR_ONCE:
        return values * 0.5
    return values


def normalization_factor(n: int) -> float:
    return (n - 1) * (n - 2) / 2.0


def normalize_scores(scores: ScoreTable, n: Optional[int] = None) -> ScoreTable:
    """Divide node scores by (n-1)(n-2)/2. Edge scores are left untouched."""
    if n is None:
        n = scores.node_count
    if n < 3:
        raise NormalizeTooSmall(n)
    if scores.normalized:
        raise AlreadyNormalized("scores are already normalized")
    return replace(scores, node_scores=scores.node_scores / normalization_factor(n), normalized=True)
