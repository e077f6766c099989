"""Structure search over order-compatible DAGs with bounded in-degree.

The decomposable score makes per-node selection independent, so the global
argmax is assembled from per-node winners. The complexity profile combines
per-node (df, best NAL) Pareto frontiers with an exact-knapsack dynamic
program over total complexity.

Tie-breaking, everywhere: higher score first, then smaller df, then the
lexicographically smallest sorted parent list.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .data import Dataset, count_sufficient_stats
from .errors import AllCandidatesUnobservable, SchemaMismatch
from .model import Dag, node_df
from .scoring import (
    NEG_INFINITY,
    NodeScore,
    Penalty,
    lambda_value,
    node_nal_from_counts,
)


@dataclass(frozen=True)
class SearchSpace:
    """All parent sets of strict order-predecessors up to max_parents."""

    order: tuple[int, ...]
    max_parents: int = 3

    def __init__(self, order: Sequence[int], max_parents: int = 3):
        order = tuple(int(i) for i in order)
        if sorted(order) != list(range(len(order))):
            raise ValueError("order must be a permutation of 0..N-1")
        if max_parents < 0:
            raise ValueError("max_parents must be nonnegative")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "max_parents", max_parents)

    @property
    def num_nodes(self) -> int:
        return len(self.order)

    def predecessors(self, node: int) -> tuple[int, ...]:
        rank = self.order.index(node)
        return self.order[:rank]

    def candidate_parent_sets(self, node: int) -> list[tuple[int, ...]]:
        """Subsets of predecessors, by size then lexicographic order."""
        preds = sorted(self.predecessors(node))
        out: list[tuple[int, ...]] = []
        for m in range(min(self.max_parents, len(preds)) + 1):
            out.extend(combinations(preds, m))
        return out


@dataclass(frozen=True)
class ProfilePoint:
    t: int  # total complexity (df)
    best_score: float  # total NAL at that complexity
    dag: Dag


class _Evaluator:
    """Memoizes (nal, n_i, df) per (node, parent set) for one dataset."""

    def __init__(self, data: Dataset):
        self.data = data
        self._memo: dict[tuple[int, tuple[int, ...]], tuple[float, int, int]] = {}

    def evaluate(self, node: int, parents: tuple[int, ...]) -> tuple[float, int, int]:
        key = (node, parents)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        counts = count_sufficient_stats(self.data, node, parents)
        value = node_nal_from_counts(counts)
        df = node_df(node, parents, self.data.variables)
        result = (value, counts.n_i, df)
        self._memo[key] = result
        return result


def _check_space(data: Dataset, space: SearchSpace) -> None:
    if space.num_nodes != data.num_variables:
        raise SchemaMismatch("search space and data disagree on node count")


def best_parent_set(
    data: Dataset,
    node: int,
    space: SearchSpace,
    penalty: Penalty,
    _evaluator: _Evaluator | None = None,
) -> NodeScore:
    """Exhaustive per-node winner under the decomposable score."""
    _check_space(data, space)
    ev = _evaluator or _Evaluator(data)
    best: NodeScore | None = None
    for parents in space.candidate_parent_sets(node):
        value, n_i, df = ev.evaluate(node, parents)
        if value == NEG_INFINITY:
            penalized = NEG_INFINITY
        else:
            lam = 0.0 if penalty.kind == "none" else lambda_value(penalty, n_i)
            penalized = value - lam * df
        cand = NodeScore(node, parents, value, n_i, df, penalized)
        if best is None or _better(cand, best):
            best = cand
    assert best is not None
    if best.penalized == NEG_INFINITY:
        raise AllCandidatesUnobservable(f"node {node}: every candidate has n_i = 0")
    return best


def _better(a: NodeScore, b: NodeScore) -> bool:
    return (-a.penalized, a.df, a.parents) < (-b.penalized, b.df, b.parents)


def learn_structure(data: Dataset, space: SearchSpace, penalty: Penalty) -> Dag:
    """Argmax of the decomposable score over the order-compatible space."""
    _check_space(data, space)
    ev = _Evaluator(data)
    winners = [
        best_parent_set(data, i, space, penalty, ev).parents
        for i in range(space.num_nodes)
    ]
    return Dag(winners)


def _node_frontier(
    ev: _Evaluator, node: int, space: SearchSpace
) -> list[tuple[int, float, tuple[int, ...]]]:
    """Pareto frontier of (df, best NAL, parents) for one node.

    Frontier entries have strictly increasing df and strictly increasing NAL;
    a larger parent set that fails to improve the NAL is dominated and drops
    out (the minimal-complexity convention).
    """
    by_df: dict[int, tuple[float, tuple[int, ...]]] = {}
    for parents in space.candidate_parent_sets(node):
        value, _, df = ev.evaluate(node, parents)
        if value == NEG_INFINITY:
            continue
        cur = by_df.get(df)
        if cur is None or value > cur[0] or (value == cur[0] and parents < cur[1]):
            by_df[df] = (value, parents)
    if not by_df:
        raise AllCandidatesUnobservable(f"node {node}: every candidate has n_i = 0")
    frontier = []
    best = NEG_INFINITY
    for df in sorted(by_df):
        value, parents = by_df[df]
        if value > best:
            frontier.append((df, value, parents))
            best = value
    return frontier


def complexity_profile(data: Dataset, space: SearchSpace) -> list[ProfilePoint]:
    """Best total NAL at each achievable total complexity t.

    Points dominated by a cheaper structure with at least the same NAL are
    pruned, so t and best_score are both strictly increasing.
    """
    _check_space(data, space)
    ev = _Evaluator(data)
    # DP state: total df -> (total nal, per-node parents chosen so far)
    states: dict[int, tuple[float, tuple[tuple[int, ...], ...]]] = {0: (0.0, ())}
    for node in range(space.num_nodes):
        frontier = _node_frontier(ev, node, space)
        merged: dict[int, tuple[float, tuple[tuple[int, ...], ...]]] = {}
        for t, (score, choice) in states.items():
            for df, value, parents in frontier:
                key = t + df
                cand = (score + value, choice + (parents,))
                cur = merged.get(key)
                if cur is None or cand[0] > cur[0] or (
                    cand[0] == cur[0] and cand[1] < cur[1]
                ):
                    merged[key] = cand
        states = merged
    points = []
    best = NEG_INFINITY
    for t in sorted(states):
        score, choice = states[t]
        if score > best:
            points.append(ProfilePoint(t, score, Dag(choice)))
            best = score
    return points


def select_from_profile(
    profile: Sequence[ProfilePoint], penalty: Penalty, n: int
) -> ProfilePoint:
    """Final model choice: maximize best_score - lambda_n * t over the profile."""
    lam = 0.0 if penalty.kind == "none" else lambda_value(penalty, n)
    best = None
    for point in profile:
        value = point.best_score - lam * point.t
        if best is None or value > best[0] or (value == best[0] and point.t < best[1].t):
            best = (value, point)
    if best is None:
        raise ValueError("empty profile")
    return best[1]
