"""Dynamic food world: survival per episode with and without transition learning.

Ten agents start from random transition models and live ten episodes each.
Learning agents keep their updated model from one episode to the next.
"""

import numpy as np

from aif_forager.harness import emit, runner, scenarios

curves = {}
for sid in ("case2", "case2_learning", "case2_correctB"):
    s = runner.run_batch(scenarios.get(sid))
    curves[sid] = s.mean_survival_per_run()
    emit.emit_csv(s, f"demo_output/{sid}")
    emit.emit_plots(s, f"demo_output/{sid}/plots")

print("episode  " + "  ".join(f"{k:>15s}" for k in curves))
for run in range(10):
    print(f"{run + 1:7d}  " + "  ".join(f"{v[run]:15.2f}" for v in curves.values()))

# What did a learner end up believing about food dynamics?
s = runner.run_batch(scenarios.get("case2_learning"))
B_food = s.final_models[0].B[0]
np.set_printoptions(precision=2, suppress=True)
print("learned B[food] under eat (columns: food before):\n", B_food[:, :, 1])
print("learned B[food] under don't eat:\n", B_food[:, :, 0])

# Final-episode trajectory of the first agent.
last = s.records[0][-1]
print("food   ", [row.food_level for row in last.rows])
print("satiety", [row.satiety_level for row in last.rows])
