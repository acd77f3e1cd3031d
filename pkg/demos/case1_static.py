"""Static food world: a correct agent keeps eating, a corrupted one wavers.

Run with ``python3 demos/case1_static.py``; panels land in ``demo_output/case1``.
"""

import numpy as np

from aif_forager import inference
from aif_forager import model as M
from aif_forager.harness import emit, runner, scenarios

# The two-level model: identity likelihood, eating fills satiety only when food is present.
m = M.build_case1()
print("A[food]:\n", m.A[0])
print("B[satiety] under eat, food present:\n", m.B[1][:, :, 1, M.EAT])

# A hungry agent looking at food weighs its two one-step policies.
belief = inference.infer_states((1, 0), m)
pp = inference.infer_policies(belief, m)
for pi, g, q in zip(pp.policies, pp.G, pp.q):
    print(f"policy {M.ACTION_NAMES[pi[0]]:9s} G = {g:6.3f}  q = {q:.4f}")

# Ten steps in the world.
summary = runner.run_batch(scenarios.get("case1"))
rec = summary.records[0][0]
print("actions:", "".join("E" if a == M.EAT else "." for a in rec.actions))

# The same agent with likelihood and action labels reversed.
corrupted = runner.run_batch(scenarios.get("case1_1"))
for recs in corrupted.records:
    r = recs[0]
    print("corrupted:", "".join("E" if a == M.EAT else "." for a in r.actions),
          " satiety", np.array([row.satiety_level for row in r.rows], dtype=int))

for path in emit.emit_plots(summary, "demo_output/case1"):
    print("wrote", path)
