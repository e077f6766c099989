"""
The two-node consistency table, at desk scale
=============================================

The headline Monte Carlo experiment: two independent binary variables,
the second column fully observed, the first observed with probability
beta. A penalty that decays like n^-alpha with alpha < 1/2 stays
consistent under missingness; AIC (lambda = 1/n) and BIC
(lambda = 0.5 ln n / n) do not. Each cell reports the percentage of
replicates where the spurious edge wins.

The full-size run (1000 replicates, n up to 1e5) lives behind
`nalearn experiment --mode two-node`; this demo uses a lighter grid.
"""

from nalearn.experiments import ExperimentConfig, run_two_node

config = ExperimentConfig(
    net="two-node",
    sample_sizes=(100, 1000, 10000),
    betas=(1.0, 0.99, 0.75),
    penalties=("a0.3", "bic", "aic"),
    replicates=200,
    seed=20240901,
)

rows = run_two_node(config)

print(f"{'beta':>6} {'n':>7} | " + "  ".join(f"{p:>6}" for p in config.penalties))
for beta in config.betas:
    for n in config.sample_sizes:
        cells = {r["penalty"]: r["wrong_pct"] for r in rows
                 if r["beta"] == beta and r["n"] == n}
        line = "  ".join(f"{cells[p]:6.1f}" for p in config.penalties)
        print(f"{beta:>6} {n:>7} | {line}")

print()
print("read: alpha=0.3 stays at 0; BIC's wrong-selection rate grows with n")
print("once beta < 1 (inconsistency), and AIC is inconsistent even at beta=1.")
