"""Datasets with missing cells, sufficient counts and plug-in estimators.

A dataset is an (n, N) array of int16 category codes; MISSING (-1) marks an
unobserved cell. Counts for a (node, parent set) pair use available-case
analysis: a record contributes only when the node and every parent in the
candidate set are all observed in that record.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRange, SchemaMismatch
from .model import Variable

MISSING = -1
MISSING_TOKEN = "NA"


@dataclass(frozen=True)
class Dataset:
    """An immutable table of categorical records with optional missing cells."""

    variables: tuple[Variable, ...]
    values: np.ndarray  # (n, N) int16, MISSING = -1

    def __init__(self, variables: Iterable[Variable], values):
        variables = tuple(variables)
        a = np.asarray(values, dtype=np.int16)
        if a.size == 0:
            a = a.reshape(0, len(variables))
        if a.ndim != 2 or a.shape[1] != len(variables):
            raise SchemaMismatch(
                f"values shape {a.shape} does not match {len(variables)} variables"
            )
        for i, v in enumerate(variables):
            col = a[:, i]
            if col.size and (col.min() < MISSING or col.max() >= v.cardinality):
                raise SchemaMismatch(
                    f"column {v.name!r} has values outside 0..{v.cardinality - 1}"
                )
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "values", a)

    @property
    def num_records(self) -> int:
        return self.values.shape[0]

    @property
    def num_variables(self) -> int:
        return self.values.shape[1]

    def is_complete(self) -> bool:
        return bool(np.all(self.values != MISSING))


@dataclass(frozen=True)
class SufficientCounts:
    """Counts n_i, n_ij, n_ikj for one node and one candidate parent set.

    n_ij has one entry per parent configuration (canonical row-major order);
    n_ikj has shape (q(X_i), q(Pa_i)), i.e. child states index the rows.
    """

    node: int
    parents: tuple[int, ...]
    n: int
    n_i: int
    n_ij: np.ndarray
    n_ikj: np.ndarray


def count_sufficient_stats(
    data: Dataset, node: int, parents: Sequence[int]
) -> SufficientCounts:
    """Tally available-case counts for (node | parents)."""
    N = data.num_variables
    if not 0 <= node < N:
        raise IndexOutOfRange(f"node {node}")
    parents = tuple(sorted(int(p) for p in parents))
    for p in parents:
        if not 0 <= p < N:
            raise IndexOutOfRange(f"parent {p}")
        if p == node:
            raise IndexOutOfRange(f"node {node} cannot be its own parent")

    vals = data.values
    q_i = data.variables[node].cardinality
    q_parents = [data.variables[p].cardinality for p in parents]
    q_pa = int(np.prod(q_parents)) if parents else 1

    mask = vals[:, node] != MISSING
    for p in parents:
        mask &= vals[:, p] != MISSING

    child = vals[mask, node].astype(np.int64)
    if parents:
        j = np.zeros(child.shape[0], dtype=np.int64)
        for p, q in zip(parents, q_parents):  # last parent varies fastest
            j = j * q + vals[mask, p].astype(np.int64)
    else:
        j = np.zeros(child.shape[0], dtype=np.int64)

    flat = np.bincount(child * q_pa + j, minlength=q_i * q_pa)
    n_ikj = flat.reshape(q_i, q_pa).astype(np.int64)
    n_ij = n_ikj.sum(axis=0)
    n_i = int(n_ij.sum())
    return SufficientCounts(node, parents, data.num_records, n_i, n_ij, n_ikj)


@dataclass(frozen=True)
class ThetaEstimate:
    """Plug-in ratio estimators for one (node, parent set) pair.

    Undefined ratios (zero denominator) are NaN, deliberately distinct
    from an estimated zero probability.
    """

    node: int
    parents: tuple[int, ...]
    theta_i: float  # n_i / n, NaN when n == 0
    theta_ij: np.ndarray  # n_ij / n_i
    theta_ikj: np.ndarray  # n_ikj / n_ij, shape (q_i, q_pa)


def estimate_theta(counts: SufficientCounts) -> ThetaEstimate:
    """Compute theta-hat ratios from sufficient counts."""
    theta_i = counts.n_i / counts.n if counts.n > 0 else np.nan
    with np.errstate(divide="ignore", invalid="ignore"):
        theta_ij = np.where(
            counts.n_i > 0, counts.n_ij / max(counts.n_i, 1), np.nan
        ).astype(float)
        denom = counts.n_ij.astype(float)
        theta_ikj = np.where(denom > 0, counts.n_ikj / np.maximum(denom, 1.0), np.nan)
    return ThetaEstimate(counts.node, counts.parents, theta_i, theta_ij, theta_ikj)


def write_csv(data: Dataset, path_or_buf) -> None:
    """Write a dataset as CSV: header of variable names, "NA" for missing."""
    close = False
    if isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__"):
        f = open(path_or_buf, "w", encoding="utf-8", newline="\n")
        close = True
    else:
        f = path_or_buf
    try:
        f.write(",".join(v.name for v in data.variables) + "\n")
        for row in data.values:
            f.write(
                ",".join(MISSING_TOKEN if c == MISSING else str(int(c)) for c in row)
                + "\n"
            )
    finally:
        if close:
            f.close()


def read_csv(path_or_buf, variables: Sequence[Variable]) -> Dataset:
    """Read a CSV written by write_csv; header must match the schema names."""
    close = False
    if isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__"):
        f = open(path_or_buf, "r", encoding="utf-8")
        close = True
    else:
        f = path_or_buf
    try:
        header = f.readline().rstrip("\r\n").split(",")
        names = [v.name for v in variables]
        if header != names:
            raise SchemaMismatch(f"CSV header {header} != schema {names}")
        rows = []
        for line in f:
            line = line.rstrip("\r\n")
            if not line:
                continue
            rows.append(
                [MISSING if c == MISSING_TOKEN else int(c) for c in line.split(",")]
            )
    finally:
        if close:
            f.close()
    values = np.asarray(rows, dtype=np.int16) if rows else np.empty((0, len(variables)))
    return Dataset(variables, values)


def dataset_to_csv_string(data: Dataset) -> str:
    buf = io.StringIO()
    write_csv(data, buf)
    return buf.getvalue()
