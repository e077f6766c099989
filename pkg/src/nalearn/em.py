"""The sub-optimal EM objective whose fixed point reproduces n * NAL.

The objective weights each observed cell count by an expected fill-in for
the records where the (node, parents) block is missing, using reference
parameters; evaluating it at the plug-in estimators on both sides equals
the record count times the node-average log-likelihood.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .data import SufficientCounts
from .errors import NonNormalizedParameters, UnobservableNode
from .model import Cpt

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class NodeParams:
    """Multinomial parameters for one node: row weights and row tables."""

    p_j: np.ndarray  # (q_pa,) distribution over parent configs
    p_kj: np.ndarray  # (q_i, q_pa) conditional table, columns normalized


def _check_normalized(params: NodeParams, node: int) -> None:
    if abs(params.p_j.sum() - 1.0) > _NORM_TOL:
        raise NonNormalizedParameters(f"node {node}: parent-config weights")
    col = params.p_kj.sum(axis=0)
    if np.any(np.abs(col - 1.0) > _NORM_TOL):
        raise NonNormalizedParameters(f"node {node}: conditional columns")


@dataclass(frozen=True)
class QStarInput:
    """Everything needed to evaluate the objective for a fixed structure."""

    counts: tuple[SufficientCounts, ...]  # one per node, aligned with the DAG
    reference: tuple[NodeParams, ...]  # P' in the expected fill-in weights
    target: tuple[NodeParams, ...]  # P being scored


def q_star(inp: QStarInput) -> float:
    """Sum over nodes of (n_ikj + (n - n_i) p'_j p'_kj) * ln p_kj."""
    total = []
    for node, (counts, ref, tgt) in enumerate(
        zip(inp.counts, inp.reference, inp.target)
    ):
        _check_normalized(ref, node)
        _check_normalized(tgt, node)
        n_mis = counts.n - counts.n_i
        weights = counts.n_ikj + n_mis * ref.p_j[None, :] * ref.p_kj
        with np.errstate(divide="ignore"):
            logs = np.log(np.where(tgt.p_kj > 0, tgt.p_kj, 1.0))
        if np.any((weights > 0) & (tgt.p_kj <= 0)):
            return float("-inf")
        total.append(float((weights * logs).sum()))
    return math.fsum(total)


def q_star_maximizer(counts: Sequence[SufficientCounts]) -> tuple[tuple[NodeParams, ...], Cpt]:
    """Plug-in maximizer: p_j = n_ij/n_i, p_kj = n_ikj/n_ij.

    Columns with no observations are set uniform; the uniform padding is
    visible as exact 1/q entries in the returned tables.
    """
    params = []
    tables = []
    for c in counts:
        if c.n_i == 0:
            raise UnobservableNode(f"node {c.node}: n_i = 0")
        p_j = c.n_ij / c.n_i
        q_i = c.n_ikj.shape[0]
        with np.errstate(divide="ignore", invalid="ignore"):
            p_kj = np.where(
                c.n_ij[None, :] > 0,
                c.n_ikj / np.maximum(c.n_ij, 1)[None, :],
                1.0 / q_i,
            )
        params.append(NodeParams(p_j.astype(float), p_kj.astype(float)))
        tables.append(p_kj.T.copy())
    return tuple(params), Cpt(tables)


def q_star_at_maximizer(counts: Sequence[SufficientCounts]) -> float:
    """Objective evaluated with the plug-in estimators on both sides."""
    params, _ = q_star_maximizer(counts)
    return q_star(QStarInput(tuple(counts), params, params))
