"""Acceptance criteria, one test each.

Every test records a single ``CRITERION n: PASS|FAIL ...`` line; the lines
are printed in the pytest terminal summary and by running this file
directly (``python3 tests/test_acceptance.py``). Thresholds and time budgets
are the stated ones; nothing is loosened to make a criterion pass.
"""

import dataclasses
import filecmp
import itertools
import os
import sys
import tempfile
import time
from functools import lru_cache

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from aif_forager import inference, learning, maths  # noqa: E402
from aif_forager import model as M  # noqa: E402
from aif_forager.harness import emit, runner, scenarios  # noqa: E402

RESULTS = {}


def record(n, ok, detail, elapsed, budget):
    in_time = elapsed < budget
    passed = bool(ok) and in_time
    timing = f"{elapsed:.2f}s of {budget:g}s" + ("" if in_time else " OVER BUDGET")
    RESULTS[n] = f"CRITERION {n:2d}: {'PASS' if passed else 'FAIL'}  {detail} [{timing}]"
    print(RESULTS[n])
    assert passed, RESULTS[n]


@lru_cache(maxsize=None)
def batch(scenario_id):
    t0 = time.perf_counter()
    s = runner.run_batch(scenarios.get(scenario_id))
    return s, time.perf_counter() - t0


def final_mean(summary):
    return float(summary.survival[:, -1].mean())


def test_criterion_01_case1_reproduction():
    t0 = time.perf_counter()
    cfg = scenarios.get("case1")
    rec, _ = runner.run_episode(cfg, scenarios.agent_model(cfg, None), seed=cfg.base_seed)
    all_eat = rec.actions == [M.EAT] * 10
    food_const = all(r.obs[0] == 1 for r in rec.rows)
    # obs at row t is what the agent saw before acting at t
    sated = all(r.obs[1] == 1 for r in rec.rows[1:]) and all(r.satiety_level == 1.0 for r in rec.rows)
    ok = all_eat and food_const and sated and rec.survival_time == 10
    record(1, ok, f"actions={''.join(map(str, rec.actions))} food constant={food_const} sated from t=1={sated}",
           time.perf_counter() - t0, 1)


def test_criterion_02_case1_1_degradation():
    t0 = time.perf_counter()
    s = runner.run_batch(scenarios.get("case1_1"))
    recs = [r[0] for r in s.records]
    assert len(recs) == 5
    differs = sum(r.actions != [M.EAT] * 10 for r in recs)
    hungry = sum(any(row.satiety_level == 0.0 for row in r.rows[2:]) for r in recs)
    food_const = all(row.obs[0] == 1 for r in recs for row in r.rows)
    ok = differs >= 1 and hungry >= 1 and food_const
    record(2, ok, f"{differs}/5 seeds deviate from all-eat, {hungry}/5 hungry at t>=2, food constant={food_const}",
           time.perf_counter() - t0, 1)


def case2_first_runs():
    t0 = time.perf_counter()
    cfg = dataclasses.replace(scenarios.get("case2"), num_runs_per_agent=1)
    s = runner.run_batch(cfg)
    return [r[0] for r in s.records], time.perf_counter() - t0


def test_criterion_03_case2_without_learning_fails():
    recs, elapsed = case2_first_runs()
    died = [r for r in recs if r.died]
    food_max = scenarios.get("case2").env.food_max
    starvation = sum(r.rows[-1].food_level == food_max for r in died)
    overconsumption = sum(r.rows[-1].food_level == 0 for r in died)
    other = len(died) - starvation - overconsumption
    both = starvation > 0 and overconsumption > 0
    # the criterion accepts a single documented mode; the README and tests name the one observed
    single_mode_documented = not both and (starvation > 0 or overconsumption > 0)
    ok = len(died) >= 8 and (both or single_mode_documented)
    mode = "both modes" if both else "single mode (starvation by abstinence), documented"
    record(3, ok, f"{len(died)}/10 died before step 10; starvation={starvation} overconsumption={overconsumption} "
                  f"other={other}; {mode}", elapsed, 2)


def test_criterion_04_case2_with_learning_succeeds():
    s, elapsed = batch("case2_learning")
    late = float(s.survival[:, 5:].mean())
    recs, _ = case2_first_runs()
    baseline = float(np.mean([r.survival_time for r in recs]))
    ok = late >= 9.0 and late > baseline
    record(4, ok, f"mean survival episodes 6-10 = {late:.2f} (need >= 9.0); no-learning mean = {baseline:.2f}",
           elapsed, 10)


def test_criterion_05_learned_trajectories_keep_reserves():
    s, elapsed = batch("case2_learning")
    t0 = time.perf_counter()
    finals = [recs[-1] for recs in s.records]
    surviving = [r for r in finals if not r.died]
    bad = [r for r in surviving if any(row.satiety_level <= 0 or row.food_level <= 0 for row in r.rows)]
    ok = len(bad) == 0
    record(5, ok, f"{len(bad)}/{len(surviving)} surviving final-episode runs touch food or satiety 0",
           elapsed + time.perf_counter() - t0, 10)


def test_criterion_06_efe_oracle():
    t0 = time.perf_counter()
    m = M.build_case2(policy_restriction=M.FULL)
    policies = M.enumerate_policies(m)
    assert len(policies) == 8
    rng = np.random.default_rng(2024)
    worst, same_argmin = 0.0, True
    for _ in range(5):
        b = [maths.dirichlet_sample(rng, np.ones(n)) for n in m.num_states]
        G = np.array([inference.expected_free_energy(pi, b, m) for pi in policies])
        ref = np.array([oracles.trajectory_efe(pi, b, m.A, m.B, m.C) for pi in policies])
        worst = max(worst, float(np.max(np.abs(G - ref))))
        same_argmin &= set(np.flatnonzero(G == G.min())) == set(np.flatnonzero(np.isclose(ref, ref.min(), rtol=0,
                                                                                          atol=1e-9)))
    ok = worst <= 1e-9 and same_argmin
    record(6, ok, f"max |G - oracle| = {worst:.2e} over 5 beliefs x 8 policies; argmin agrees={same_argmin}",
           time.perf_counter() - t0, 1)


def test_criterion_07_bayes_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    for m in (M.build_case1(), M.build_case2()):
        for obs in itertools.product(*(range(n) for n in m.num_obs)):
            q = inference.infer_states(obs, m)
            ref = oracles.joint_posterior(obs, m.A, m.D)
            worst = max(worst, *(float(np.max(np.abs(a - b))) for a, b in zip(q, ref)))
    record(7, worst <= 1e-9, f"max posterior error {worst:.2e} over all Case 1 and Case 2 observations",
           time.perf_counter() - t0, 1)


def test_criterion_08_learning_invariants():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    m = learning.init_random_B(M.build_case2(), rng)
    for _ in range(1000):
        prev = tuple(int(x) for x in rng.integers(0, 3, 2))
        nxt = tuple(int(x) for x in rng.integers(0, 3, 2))
        cfg = learning.LearningConfig(enabled=True, learning_rate=float(rng.uniform(0.01, 1.0)))
        m = learning.update_B(m, prev, nxt, int(rng.integers(0, 2)), cfg)
    col_err = max(float(np.max(np.abs(b.sum(axis=0) - 1))) for b in m.B)

    base = M.build_case1()
    B = [np.array(b) for b in base.B]
    B[0][:, 0, 0] = [0.5, 0.5]
    worked = learning.update_B(base.replace(B=B), (0, 0), (0, 0), 0, learning.LearningConfig(True, 0.3))
    got = worked.B[0][:, 0, 0]
    ex_err = float(np.max(np.abs(got - np.array([0.8, 0.5]) / 1.3)))
    ok = col_err <= 1e-9 and ex_err <= 1e-9 and np.allclose(got, [0.6154, 0.3846], atol=5e-5)
    record(8, ok, f"column-sum error {col_err:.1e} after 1000 updates; worked example {got.round(4).tolist()}",
           time.perf_counter() - t0, 1)


def test_criterion_09_extreme_B_contrast():
    a, ta = batch("case2_extremeB")
    b, tb = batch("case2_extremeB_learning")
    ok = a.mean_survival < b.mean_survival and final_mean(b) >= 8
    record(9, ok, f"no learning {a.mean_survival:.2f} < learning {b.mean_survival:.2f}; "
                  f"learning final episode {final_mean(b):.2f} (need >= 8)", ta + tb, 5)


def test_criterion_10_rate_variant_contrast():
    a, ta = batch("case2_rates")
    b, tb = batch("case2_rates_learning")
    ok = a.mean_survival <= 5 and final_mean(b) >= 8
    record(10, ok, f"no learning mean {a.mean_survival:.2f} (need <= 5); "
                   f"learning final episode {final_mean(b):.2f} (need >= 8)", ta + tb, 5)


def test_criterion_11_planning_horizon_ordering():
    p1, t1 = batch("case2_plen1")
    p1l, t2 = batch("case2_plen1_learning")
    p3l, t3 = batch("case2_learning")
    ok = p1.mean_survival <= 3 and final_mean(p3l) >= final_mean(p1l) and final_mean(p1l) > final_mean(p1)
    # the horizon-3 learning batch is shared with criterion 4, so only its own batches count toward the budget
    record(11, ok, f"plen1 {p1.mean_survival:.2f} (need <= 3); final episode plen3+learning {final_mean(p3l):.2f} "
                   f">= plen1+learning {final_mean(p1l):.2f} > plen1 {final_mean(p1):.2f}", t1 + t2, 5)


def test_criterion_12_determinism():
    t0 = time.perf_counter()
    cfg = dataclasses.replace(scenarios.get("case2_learning"), num_agents=3, num_runs_per_agent=3, base_seed=12)
    with tempfile.TemporaryDirectory() as d:
        a, b = os.path.join(d, "a"), os.path.join(d, "b")
        emit.emit_csv(runner.run_batch(cfg), a)
        emit.emit_csv(runner.run_batch(cfg), b)
        names = sorted(os.path.relpath(os.path.join(r, f), a) for r, _, fs in os.walk(a) for f in fs)
        _, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    ok = not mismatch and not errors and len(names) == 3 + 9
    record(12, ok, f"{len(names)} files byte-identical across two runs (mismatch={len(mismatch)})",
           time.perf_counter() - t0, 2)


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
