"""Core domain types: variables, DAGs, CPTs and whole networks.

Conventions used throughout the package:

* categories of a variable with cardinality q are the dense integers 0..q-1;
* parent lists are stored sorted ascending (the canonical form);
* a parent configuration is indexed row-major over the parents in ascending
  node order, with the *last* parent varying fastest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CycleDetected, MalformedParents, NodeCountMismatch

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Variable:
    """A categorical variable with values 0..cardinality-1."""

    name: str
    cardinality: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")
        if self.cardinality < 2:
            raise ValueError(f"variable {self.name!r}: cardinality must be >= 2")


def _canonical_parents(parents: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(int(p) for p in ps)) for ps in parents)


@dataclass(frozen=True)
class Dag:
    """A directed acyclic graph given by per-node sorted parent lists."""

    parents: tuple[tuple[int, ...], ...]

    def __init__(self, parents: Iterable[Iterable[int]]):
        object.__setattr__(self, "parents", _canonical_parents(parents))

    @property
    def num_nodes(self) -> int:
        return len(self.parents)

    def edges(self) -> list[tuple[int, int]]:
        """All directed edges as (parent, child) pairs."""
        return [(p, i) for i, ps in enumerate(self.parents) for p in ps]

    def num_edges(self) -> int:
        return sum(len(ps) for ps in self.parents)

    def topological_order(self) -> list[int]:
        """Lowest-index-first topological order; raises CycleDetected."""
        n = self.num_nodes
        children: list[list[int]] = [[] for _ in range(n)]
        indeg = [0] * n
        for i, ps in enumerate(self.parents):
            indeg[i] = len(ps)
            for p in ps:
                children[p].append(i)
        import heapq

        ready = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            i = heapq.heappop(ready)
            order.append(i)
            for c in children[i]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(ready, c)
        if len(order) < n:
            raise CycleDetected([i for i in range(n) if i not in set(order)])
        return order


def validate_dag(dag: Dag) -> None:
    """Check acyclicity and parent-list sanity; raise on violation."""
    n = dag.num_nodes
    for i, ps in enumerate(dag.parents):
        if len(set(ps)) != len(ps):
            raise MalformedParents(i, "duplicate parents")
        for p in ps:
            if p == i:
                raise MalformedParents(i, "self-loop")
            if not 0 <= p < n:
                raise MalformedParents(i, f"parent index {p} out of range")
    dag.topological_order()


def is_compatible_with_order(dag: Dag, order: Sequence[int]) -> bool:
    """True iff every parent precedes its child in the given node order."""
    rank = {node: r for r, node in enumerate(order)}
    return all(rank[p] < rank[i] for i, ps in enumerate(dag.parents) for p in ps)


def df_complexity(dag: Dag, variables: Sequence[Variable]) -> int:
    """Number of free CPT parameters: sum_i q(Pa_i) * (q(X_i) - 1)."""
    if len(variables) != dag.num_nodes:
        raise NodeCountMismatch("variable list length != number of nodes")
    total = 0
    for i, ps in enumerate(dag.parents):
        q_pa = 1
        for p in ps:
            q_pa *= variables[p].cardinality
        total += q_pa * (variables[i].cardinality - 1)
    return total


def node_df(node: int, parents: Sequence[int], variables: Sequence[Variable]) -> int:
    """Per-node parameter count q(Pa_i) * (q(X_i) - 1)."""
    q_pa = 1
    for p in parents:
        q_pa *= variables[p].cardinality
    return q_pa * (variables[node].cardinality - 1)


def is_subgraph(g1: Dag, g2: Dag) -> bool:
    """True iff every directed edge of g1 is also in g2."""
    if g1.num_nodes != g2.num_nodes:
        raise NodeCountMismatch(f"{g1.num_nodes} != {g2.num_nodes}")
    return all(set(p1) <= set(p2) for p1, p2 in zip(g1.parents, g2.parents))


def parent_config_count(parents: Sequence[int], variables: Sequence[Variable]) -> int:
    q = 1
    for p in parents:
        q *= variables[p].cardinality
    return q


@dataclass(frozen=True)
class Cpt:
    """Conditional probability tables, one per node.

    tables[i] has shape (q(Pa_i), q(X_i)): one row per parent configuration
    in the canonical row-major order, each row a distribution over the
    child's states.
    """

    tables: tuple[np.ndarray, ...]

    def __init__(self, tables: Iterable[np.ndarray]):
        frozen = []
        for t in tables:
            a = np.asarray(t, dtype=float).copy()
            a.setflags(write=False)
            frozen.append(a)
        object.__setattr__(self, "tables", tuple(frozen))


@dataclass(frozen=True)
class BayesNet:
    """A discrete Bayesian network: variables, structure and CPTs."""

    variables: tuple[Variable, ...]
    dag: Dag
    cpt: Cpt

    def __init__(self, variables: Iterable[Variable], dag: Dag, cpt: Cpt):
        variables = tuple(variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        validate_dag(dag)
        if len(variables) != dag.num_nodes:
            raise NodeCountMismatch("variables vs dag size")
        if len(cpt.tables) != dag.num_nodes:
            raise ValueError("cpt must have one table per node")
        for i, table in enumerate(cpt.tables):
            q_pa = parent_config_count(dag.parents[i], variables)
            q_i = variables[i].cardinality
            if table.shape != (q_pa, q_i):
                raise ValueError(
                    f"node {names[i]}: cpt shape {table.shape}, expected ({q_pa}, {q_i})"
                )
            if np.any(table < 0) or np.any(table > 1):
                raise ValueError(f"node {names[i]}: cpt entries outside [0,1]")
            bad = np.abs(table.sum(axis=1) - 1.0) > ROW_SUM_TOL
            if np.any(bad):
                raise ValueError(
                    f"node {names[i]}: cpt row(s) {np.nonzero(bad)[0].tolist()} do not sum to 1"
                )
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "dag", dag)
        object.__setattr__(self, "cpt", cpt)

    @property
    def num_nodes(self) -> int:
        return len(self.variables)

    def df(self) -> int:
        return df_complexity(self.dag, self.variables)


def net_to_dict(net: BayesNet) -> dict:
    return {
        "variables": [
            {"name": v.name, "cardinality": v.cardinality} for v in net.variables
        ],
        "parents": [list(ps) for ps in net.dag.parents],
        "cpt": [t.tolist() for t in net.cpt.tables],
    }


def net_from_dict(obj: dict) -> BayesNet:
    variables = [Variable(d["name"], int(d["cardinality"])) for d in obj["variables"]]
    dag = Dag(obj["parents"])
    tables = []
    for i, rows in enumerate(obj["cpt"]):
        q_pa = parent_config_count(dag.parents[i], variables)
        q_i = variables[i].cardinality
        a = np.asarray(rows, dtype=float)
        if a.shape != (q_pa, q_i):
            raise ValueError(
                f"node {variables[i].name}: cpt shape {a.shape}, expected ({q_pa}, {q_i})"
            )
        tables.append(a)
    return BayesNet(variables, dag, Cpt(tables))


def save_net(net: BayesNet, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(net_to_dict(net), f, indent=1)
        f.write("\n")


def load_net(path) -> BayesNet:
    with open(path, "r", encoding="utf-8") as f:
        return net_from_dict(json.load(f))


def structure_to_dict(dag: Dag, variables: Sequence[Variable]) -> dict:
    """Structure-only variant of the network format (no "cpt" key)."""
    return {
        "variables": [
            {"name": v.name, "cardinality": v.cardinality} for v in variables
        ],
        "parents": [list(ps) for ps in dag.parents],
    }


def structure_from_dict(obj: dict) -> tuple[list[Variable], Dag]:
    variables = [Variable(d["name"], int(d["cardinality"])) for d in obj["variables"]]
    dag = Dag(obj["parents"])
    validate_dag(dag)
    if dag.num_nodes != len(variables):
        raise NodeCountMismatch("variables vs parents length")
    return variables, dag


def save_structure(dag: Dag, variables: Sequence[Variable], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(structure_to_dict(dag, variables), f, indent=1)
        f.write("\n")


def load_structure(path) -> tuple[list[Variable], Dag]:
    with open(path, "r", encoding="utf-8") as f:
        return structure_from_dict(json.load(f))
