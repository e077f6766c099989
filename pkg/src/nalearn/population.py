"""Exact population-level quantities via enumeration of the joint state space.

All computations marginalize the exact joint distribution of the generating
network, so they are limited to small state spaces (configurable cap). The
missingness enters only through observation probabilities theta_i, which
under MCAR factor out of the conditional tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import StateSpaceTooLarge, TableMismatch
from .model import BayesNet, Dag, df_complexity, is_subgraph
from .sampling import Bernoulli, KPerRecord, MissingnessModel, subset_observation_probability

STATE_SPACE_CAP = 1 << 24


def _broadcast_factor(table: np.ndarray, axes: list[int], N: int) -> np.ndarray:
    """Expand a factor with dims ordered by `axes` to N broadcastable dims."""
    order = sorted(axes)
    dest = [order.index(a) for a in axes]
    src = np.moveaxis(table, range(len(axes)), dest)
    idx = tuple(slice(None) if ax in axes else np.newaxis for ax in range(N))
    return src[idx]


def _joint_array(net: BayesNet, cap: int = STATE_SPACE_CAP) -> np.ndarray:
    shape = tuple(v.cardinality for v in net.variables)
    total = int(np.prod(shape))
    if total > cap:
        raise StateSpaceTooLarge(f"{total} joint states exceeds cap {cap}")
    joint = np.ones(shape)
    N = net.num_nodes
    for i in range(N):
        parents = net.dag.parents[i]
        q_i = net.variables[i].cardinality
        q_parents = [net.variables[p].cardinality for p in parents]
        table = net.cpt.tables[i].reshape(*q_parents, q_i)
        joint = joint * _broadcast_factor(table, list(parents) + [i], N)
    return joint


def joint_distribution(net: BayesNet, cap: int = STATE_SPACE_CAP) -> np.ndarray:
    """Flat joint probability vector, node 0 slowest (C-order ravel)."""
    return _joint_array(net, cap).ravel()


@dataclass(frozen=True)
class NodeTable:
    """Population tables for one (node, parent set) pair."""

    node: int
    parents: tuple[int, ...]
    theta_i: float  # P(node and parents all observed)
    theta_ij: np.ndarray  # P(Pa_i = j), canonical j order
    theta_ikj: np.ndarray  # P(X_i = k | Pa_i = j), shape (q_i, q_pa)
    uniform_flags: np.ndarray  # True where a zero-probability config was padded


@dataclass(frozen=True)
class InducedTable:
    """Per-node population tables of a candidate DAG induced by a true net."""

    dag: Dag
    nodes: tuple[NodeTable, ...]


def _observation_probability(
    node: int, parents: Sequence[int], missing: MissingnessModel | None, N: int
) -> float:
    if missing is None:
        return 1.0
    if isinstance(missing, Bernoulli):
        prob = missing.observe_probs[node]
        for p in parents:
            prob *= missing.observe_probs[p]
        return prob
    return subset_observation_probability(N, missing.k, len(parents) + 1)


def _node_table(joint: np.ndarray, node: int, parents: tuple[int, ...], theta_i: float) -> NodeTable:
    N = joint.ndim
    q_i = joint.shape[node]
    other = tuple(ax for ax in range(N) if ax != node and ax not in parents)
    marg = joint.sum(axis=other, keepdims=False)  # axes: sorted(parents + node)
    kept = sorted(list(parents) + [node])
    child_pos = kept.index(node)
    # move child axis last; remaining axes are the parents in ascending order
    marg = np.moveaxis(marg, child_pos, -1)
    q_pa = int(np.prod([joint.shape[p] for p in parents])) if parents else 1
    pa_child = marg.reshape(q_pa, q_i)  # row-major over parents, last fastest
    theta_ij = pa_child.sum(axis=1)
    zero = theta_ij <= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = pa_child / np.where(zero, 1.0, theta_ij)[:, None]
    cond[zero] = 1.0 / q_i  # unreachable configs padded uniform, flagged
    return NodeTable(node, parents, theta_i, theta_ij, cond.T.copy(), zero.copy())


def induced_theta_mcar(
    g: Dag,
    net0: BayesNet,
    missing: MissingnessModel | None = None,
    cap: int = STATE_SPACE_CAP,
) -> InducedTable:
    """Population tables theta(G | G0) under MCAR missingness."""
    joint = _joint_array(net0, cap)
    N = net0.num_nodes
    tables = []
    for i, parents in enumerate(g.parents):
        theta_i = _observation_probability(i, parents, missing, N)
        tables.append(_node_table(joint, i, parents, theta_i))
    return InducedTable(g, tuple(tables))


def induced_joint(g: Dag, net0: BayesNet, cap: int = STATE_SPACE_CAP) -> np.ndarray:
    """Flat joint of the distribution induced by reading net0 through g."""
    table = induced_theta_mcar(g, net0, None, cap)
    shape = tuple(v.cardinality for v in net0.variables)
    N = len(shape)
    out = np.ones(shape)
    for entry in table.nodes:
        parents = entry.parents
        q_parents = [shape[p] for p in parents]
        cond = entry.theta_ikj.T.reshape(*q_parents, shape[entry.node])
        out = out * _broadcast_factor(cond, list(parents) + [entry.node], N)
    return out.ravel()


def node_population_nal(entry: NodeTable) -> float:
    """Observed population negative conditional entropy of one node."""
    theta = entry.theta_ikj
    with np.errstate(divide="ignore", invalid="ignore"):
        inner = np.where(theta > 0, theta * np.log(np.where(theta > 0, theta, 1.0)), 0.0)
    return float(np.dot(entry.theta_ij, inner.sum(axis=0)))


def population_nal(g: Dag, table: InducedTable) -> float:
    """Population NAL l(G | G0) from precomputed induced tables."""
    if table.dag != g:
        raise TableMismatch("induced table was computed for a different DAG")
    return math.fsum(node_population_nal(e) for e in table.nodes)


def population_nal_of(g: Dag, net0: BayesNet, cap: int = STATE_SPACE_CAP) -> float:
    return population_nal(g, induced_theta_mcar(g, net0, None, cap))


@dataclass(frozen=True)
class CandidateReport:
    dag: Dag
    df: int
    nal: float
    is_superset_of_true: bool
    is_maximizer: bool
    is_minimal_maximizer: bool


@dataclass(frozen=True)
class IdentifiabilityReport:
    """Population-level identifiability analysis over a candidate set."""

    true_dag: Dag
    true_nal: float
    candidates: tuple[CandidateReport, ...]
    minimal_maximizers: tuple[Dag, ...]
    identifiable: bool  # minimal maximizer set == {true dag}
    tolerance: float


def check_identifiability(
    net0: BayesNet,
    candidates: Sequence[Dag],
    missing: MissingnessModel | None = None,
    tol: float = 1e-9,
    cap: int = STATE_SPACE_CAP,
) -> IdentifiabilityReport:
    """Evaluate l(G|G0) over candidates and locate the minimal maximizers."""
    true_nal = population_nal_of(net0.dag, net0, cap)
    values = []
    for g in candidates:
        v = population_nal_of(g, net0, cap)
        values.append(v)
    best = max(values) if values else true_nal
    maximizer_flags = [abs(v - best) <= tol for v in values]
    maximizers = [g for g, f in zip(candidates, maximizer_flags) if f]
    minimal = []
    for g in maximizers:
        if not any(
            h != g and is_subgraph(h, g) for h in maximizers
        ):
            minimal.append(g)
    reports = []
    minimal_set = set(minimal)
    for g, v, f in zip(candidates, values, maximizer_flags):
        reports.append(
            CandidateReport(
                dag=g,
                df=df_complexity(g, net0.variables),
                nal=v,
                is_superset_of_true=is_subgraph(net0.dag, g),
                is_maximizer=f,
                is_minimal_maximizer=g in minimal_set,
            )
        )
    identifiable = len(minimal) == 1 and minimal[0] == net0.dag
    return IdentifiabilityReport(
        true_dag=net0.dag,
        true_nal=true_nal,
        candidates=tuple(reports),
        minimal_maximizers=tuple(minimal),
        identifiable=identifiable,
        tolerance=tol,
    )


def beta_of_collection(
    candidates: Sequence[Dag], missing: MissingnessModel | None, num_vars: int
) -> float:
    """Minimum positive observation probability over candidates and nodes."""
    best = 1.0
    found = False
    for g in candidates:
        for i, parents in enumerate(g.parents):
            p = _observation_probability(i, parents, missing, num_vars)
            if p > 0:
                best = min(best, p)
                found = True
    return best if found else 1.0
