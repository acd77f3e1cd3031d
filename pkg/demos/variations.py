"""Extended variations: extreme transitions, food preference, slower rates, short horizon.

Each pair runs once without and once with learning; the table lists mean
survival over all episodes and the mean of the final episode.
"""

from aif_forager.harness import runner, scenarios

pairs = [
    ("case2_extremeB", "case2_extremeB_learning"),
    ("case2_strongpref", "case2_strongpref_learning"),
    ("case2_rates", "case2_rates_learning"),
    ("case2_plen1", "case2_plen1_learning"),
]

print(f"{'scenario':28s} {'mean':>6s} {'final':>6s}")
for ids in pairs:
    for sid in ids:
        s = runner.run_batch(scenarios.get(sid))
        print(f"{sid:28s} {s.mean_survival:6.2f} {s.survival[:, -1].mean():6.2f}")
