"""Episode and batch execution."""

from dataclasses import dataclass, field

import numpy as np

from .. import env as envmod
from .. import inference, learning
from . import scenarios


@dataclass
class StepRecord:
    t: int
    action: int
    obs: tuple
    belief: list
    G: np.ndarray
    food_level: float
    satiety_level: float
    alive: bool


@dataclass
class RunRecord:
    scenario_id: str
    seed: int
    rows: list = field(default_factory=list)
    survival_time: int = 0
    agent: int = 0
    run: int = 0

    @property
    def died(self):
        return bool(self.rows) and not self.rows[-1].alive

    @property
    def actions(self):
        return [r.action for r in self.rows]


@dataclass
class BatchSummary:
    scenario_id: str
    timesteps: int
    survival: np.ndarray  # (num_agents, num_runs_per_agent)
    records: list  # records[agent][run]
    eat_freq: np.ndarray  # per timestep, over rows present at that step
    mean_food: np.ndarray
    mean_satiety: np.ndarray
    rows_per_step: np.ndarray
    final_models: list = field(default_factory=list, repr=False)

    @property
    def mean_survival(self):
        return float(self.survival.mean())

    @property
    def min_survival(self):
        return int(self.survival.min())

    @property
    def max_survival(self):
        return int(self.survival.max())

    def mean_survival_per_run(self):
        return self.survival.mean(axis=0)


def episode_seed(agent_seed, run):
    return int(np.random.SeedSequence(agent_seed, spawn_key=(run,)).generate_state(1)[0])


def run_episode(cfg, model, seed, process=None):
    """Run one episode; returns the trace and the (possibly learned) model.

    ``process`` is the model whose likelihood generates observations. It
    defaults to the scenario's correctly specified model.
    """
    if process is None:
        process = scenarios.true_model(cfg)
    rng = np.random.default_rng(seed)
    ecfg = cfg.env
    learn = cfg.learning.enabled
    state = envmod.init_env(ecfg, cfg.env_case)
    record = RunRecord(cfg.id, seed)

    obs = envmod.observe(state, process, rng, ecfg)
    belief = inference.infer_states(obs, model)
    for t in range(cfg.timesteps):
        pp = inference.infer_policies(belief, model, cfg.gamma)
        action = inference.select_action(pp, model, cfg.action_mode, rng)
        state = envmod.step(state, action, ecfg)
        record.rows.append(StepRecord(t, action, obs, belief, pp.G, state.food_level, state.satiety_level,
                                      state.alive))
        if state.alive or learn:
            # a fatal transition is still observed, so the agent can learn from it
            obs = envmod.observe(state, process, rng, ecfg, terminal=not state.alive)
            next_belief = inference.infer_states(obs, model, belief, action)
            if learn:
                prev_states, next_states = learning.experienced_transition(belief, next_belief)
                model = learning.update_B(model, prev_states, next_states, action, cfg.learning)
            belief = next_belief
        if not state.alive:
            break
        record.survival_time += 1
    return record, model


def run_agent(cfg, agent):
    """Sequential episodes for one agent, carrying the learned model forward."""
    agent_seed = cfg.base_seed + agent
    initial = scenarios.agent_model(cfg, np.random.default_rng(agent_seed))
    process = scenarios.true_model(cfg)
    model = initial
    records = []
    for run in range(cfg.num_runs_per_agent):
        start = model if cfg.learning.persist else initial
        rec, model = run_episode(cfg, start, episode_seed(agent_seed, run), process)
        rec.agent, rec.run = agent, run
        records.append(rec)
    return records, model


def run_batch(cfg):
    records, models = [], []
    for agent in range(cfg.num_agents):
        recs, final = run_agent(cfg, agent)
        records.append(recs)
        models.append(final)
    return summarize(cfg.id, cfg.timesteps, records, models)


def summarize(scenario_id, timesteps, records, final_models=()):
    survival = np.array([[r.survival_time for r in recs] for recs in records], dtype=int)
    eat = np.zeros(timesteps)
    food = np.zeros(timesteps)
    sat = np.zeros(timesteps)
    n = np.zeros(timesteps, dtype=int)
    for recs in records:
        for rec in recs:
            for row in rec.rows:
                eat[row.t] += row.action
                food[row.t] += row.food_level
                sat[row.t] += row.satiety_level
                n[row.t] += 1
    with np.errstate(invalid="ignore", divide="ignore"):
        eat, food, sat = (np.where(n > 0, x / np.maximum(n, 1), np.nan) for x in (eat, food, sat))
    return BatchSummary(scenario_id, timesteps, survival, records, eat, food, sat, n, list(final_models))
