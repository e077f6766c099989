"""DAG equivalence and structural comparison metrics."""

from __future__ import annotations

from .errors import NodeCountMismatch
from .model import Dag


def skeleton(dag: Dag) -> set[frozenset[int]]:
    """Undirected edge set."""
    return {frozenset((p, i)) for i, ps in enumerate(dag.parents) for p in ps}


def v_structures(dag: Dag) -> set[tuple[int, int, int]]:
    """Converging pairs (x, z, y), x < y, with x and y non-adjacent."""
    skel = skeleton(dag)
    out = set()
    for z, ps in enumerate(dag.parents):
        for a in ps:
            for b in ps:
                if a < b and frozenset((a, b)) not in skel:
                    out.add((a, z, b))
    return out


def dags_equivalent(g1: Dag, g2: Dag) -> bool:
    """Same skeleton and same v-structures."""
    if g1.num_nodes != g2.num_nodes:
        raise NodeCountMismatch(f"{g1.num_nodes} != {g2.num_nodes}")
    return skeleton(g1) == skeleton(g2) and v_structures(g1) == v_structures(g2)


def edge_precision_recall(truth: Dag, estimate: Dag) -> tuple[float, float]:
    """Directed-edge precision and recall; NaN-free degenerate conventions."""
    if truth.num_nodes != estimate.num_nodes:
        raise NodeCountMismatch(f"{truth.num_nodes} != {estimate.num_nodes}")
    true_edges = set(truth.edges())
    est_edges = set(estimate.edges())
    tp = len(true_edges & est_edges)
    fp = len(est_edges - true_edges)
    fn = len(true_edges - est_edges)
    precision = tp / (tp + fp) if tp + fp else 1.0
    recall = tp / (tp + fn) if tp + fn else 1.0
    return precision, recall


def edge_f_score(truth: Dag, estimate: Dag) -> float:
    """Harmonic mean of directed-edge precision and recall.

    Both edge sets empty gives 1; zero true positives with any error gives 0.
    """
    precision, recall = edge_precision_recall(truth, estimate)
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)
