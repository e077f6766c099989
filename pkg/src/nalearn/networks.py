"""Built-in networks used by the experiments and the test suite.

* two_node_net: two independent binary variables, the consistency benchmark.
* eight_node_net: a fixed 8-node network with cardinalities in {2,3,4} and
  complexity 47, used for structure-recovery studies.
* benchmark_structure_37: a 37-node structure (no CPTs) with 45 edges, at
  most 3 parents per node, cardinalities in {2,3,4} and complexity 473.
"""

from __future__ import annotations

import numpy as np

from .model import BayesNet, Cpt, Dag, Variable


def two_node_net() -> BayesNet:
    """Two independent binary variables with marginals (0.4,0.6) and (0.3,0.7)."""
    variables = [Variable("X1", 2), Variable("X2", 2)]
    dag = Dag([[], []])
    cpt = Cpt([np.array([[0.4, 0.6]]), np.array([[0.3, 0.7]])])
    return BayesNet(variables, dag, cpt)


def two_node_chain_dag() -> Dag:
    """The only order-compatible alternative: X1 -> X2."""
    return Dag([[], [0]])


_EIGHT_CARDS = [2, 3, 2, 4, 2, 3, 2, 3]
_EIGHT_PARENTS = [[], [0], [0, 1], [1], [2, 3], [0, 4], [5], [4, 6]]
_EIGHT_CPTS = [
    [
        [0.777885, 0.222115],
    ],
    [
        [0.088669, 0.789818, 0.121513],
        [0.037944, 0.122115, 0.839941],
    ],
    [
        [0.866271, 0.133729],
        [0.180011, 0.819989],
        [0.720312, 0.279688],
        [0.173949, 0.826051],
        [0.865165, 0.134835],
        [0.298908, 0.701092],
    ],
    [
        [0.096581, 0.079847, 0.008635, 0.814937],
        [0.783530, 0.091697, 0.043925, 0.080848],
        [0.030601, 0.776562, 0.069537, 0.123300],
    ],
    [
        [0.921257, 0.078743],
        [0.292295, 0.707705],
        [0.795838, 0.204162],
        [0.102393, 0.897607],
        [0.130776, 0.869224],
        [0.785008, 0.214992],
        [0.034706, 0.965294],
        [0.825738, 0.174262],
    ],
    [
        [0.044498, 0.164428, 0.791074],
        [0.713006, 0.145398, 0.141596],
        [0.835583, 0.110649, 0.053768],
        [0.203363, 0.787807, 0.008830],
    ],
    [
        [0.900068, 0.099932],
        [0.156119, 0.843881],
        [0.936964, 0.063036],
    ],
    [
        [0.166722, 0.704996, 0.128282],
        [0.078069, 0.119842, 0.802089],
        [0.014554, 0.238798, 0.746648],
        [0.753565, 0.188067, 0.058368],
    ],
]


def eight_node_net() -> BayesNet:
    """Fixed 8-node benchmark network; complexity 47, 11 edges."""
    variables = [Variable(f"V{i}", q) for i, q in enumerate(_EIGHT_CARDS)]
    return BayesNet(variables, Dag(_EIGHT_PARENTS), Cpt(_EIGHT_CPTS))


_BENCH37_CARDS = [
    4, 3, 3, 2, 4, 3, 4, 2, 2, 3, 3, 2, 4, 3, 2, 3, 3, 2, 3, 4, 2, 4, 4, 3,
    4, 4, 2, 3, 3, 2, 4, 2, 3, 2, 4, 2, 2,
]
_BENCH37_PARENTS = [
    [], [0], [0], [2], [], [0, 2, 3], [0, 1, 3], [1, 5], [0, 2], [3, 8],
    [5, 7], [], [5, 8], [], [], [13], [2], [0, 3, 15], [], [], [5, 13],
    [12, 13], [], [3], [2], [], [5, 15, 22], [2, 13, 23], [7], [], [23], [],
    [20, 27, 28], [27], [], [3, 17, 32], [],
]


def benchmark_structure_37() -> tuple[list[Variable], Dag]:
    """37-node documented structure: 45 edges, in-degree <= 3, complexity 473."""
    variables = [Variable(f"N{i}", q) for i, q in enumerate(_BENCH37_CARDS)]
    return variables, Dag(_BENCH37_PARENTS)
