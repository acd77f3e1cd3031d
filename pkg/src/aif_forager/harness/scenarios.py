"""Scenario configuration and the built-in catalog of experiments.

A scenario is a plain dataclass tree that round-trips through JSON::

    {
      "id": "case2_learning",
      "case": "case2",                # case1 | case1_1 | case2
      "timesteps": 10,
      "policy_len": 3,
      "policy_restriction": "full",   # full | constant-action
      "gamma": 16.0,
      "action_mode": "argmax",        # argmax | sample
      "preference": 4.0,
      "p_correct": 0.9,
      "strong_food_preference": false,
      "learning": {"enabled": true, "learning_rate": 1.0, "init_mode": "random_dirichlet", "persist": true},
      "env": {"food_regen": 1.0, "food_deplete": 1.0, "satiety_gain": 1.0, "satiety_decay": 1.0,
              "food_max": 2.0, "satiety_max": 2.0, "static": false, "lethal": true,
              "noisy_observations": false},
      "model_overrides": null,         # partial model JSON, see aif_forager.model
      "num_agents": 10,
      "num_runs_per_agent": 10,
      "base_seed": 0
    }

Loading a file merges it over the catalog entry named by its ``id`` (or by
an explicit base), so a config only needs the keys it changes.
"""

import copy
import dataclasses
import json
from dataclasses import dataclass, field

from .. import env as envmod
from .. import learning as learnmod
from .. import model as modelmod
from ..errors import ConfigError

CASES = ("case1", "case1_1", "case2")

# Case 2 settings shared by every catalog variant; see README for why these differ
# from the bare model defaults.
CASE2_ENV = dataclasses.replace(envmod.DYNAMIC, noisy_observations=False)
CASE2_RATE_ENV = dataclasses.replace(envmod.RATE_VARIANT, noisy_observations=False)
CASE2_LEARNING_RATE = 1.0


@dataclass(frozen=True)
class ScenarioConfig:
    id: str
    case: str = "case2"
    timesteps: int = 10
    policy_len: int = 3
    policy_restriction: str = modelmod.FULL
    gamma: float = 16.0
    action_mode: str = "argmax"
    preference: float = modelmod.DEFAULT_PREFERENCE
    p_correct: float = modelmod.DEFAULT_P_CORRECT
    strong_food_preference: bool = False
    learning: learnmod.LearningConfig = field(default_factory=learnmod.LearningConfig)
    env: envmod.EnvConfig = field(default_factory=envmod.EnvConfig)
    model_overrides: dict = None
    num_agents: int = 10
    num_runs_per_agent: int = 10
    base_seed: int = 0

    def __post_init__(self):
        if self.case not in CASES:
            raise ConfigError(f"case must be one of {CASES}, got {self.case!r}")
        if self.timesteps < 1:
            raise ConfigError("timesteps must be >= 1")
        if self.policy_len < 1:
            raise ConfigError("policy_len must be >= 1")
        if self.policy_restriction not in (modelmod.FULL, modelmod.CONSTANT_ACTION):
            raise ConfigError(f"unknown policy_restriction {self.policy_restriction!r}")
        if self.action_mode not in ("argmax", "sample"):
            raise ConfigError(f"unknown action_mode {self.action_mode!r}")
        if not self.gamma > 0:
            raise ConfigError("gamma must be positive")
        if self.num_agents < 1 or self.num_runs_per_agent < 1:
            raise ConfigError("num_agents and num_runs_per_agent must be >= 1")
        if not 0.0 < self.p_correct <= 1.0:
            raise ConfigError("p_correct must lie in (0, 1]")

    @property
    def env_case(self):
        return envmod.CASE1 if self.case in ("case1", "case1_1") else envmod.CASE2

    def to_dict(self):
        return dataclasses.asdict(self)


def from_dict(data, base=None):
    """Build a config from ``data``, merged over ``base`` (a config or catalog id)."""
    data = dict(data)
    if base is None:
        base = data.pop("base", None) or data.get("id")
    merged = {}
    if base is not None:
        cat = catalog_by_id()
        if isinstance(base, ScenarioConfig):
            merged = base.to_dict()
        elif base in cat:
            merged = cat[base].to_dict()
        elif "case" not in data:
            raise ConfigError(f"unknown scenario {base!r}")
    merged = _deep_merge(merged, data)
    if "id" not in merged:
        raise ConfigError("scenario config needs an 'id'")
    fields = {f.name for f in dataclasses.fields(ScenarioConfig)}
    unknown = set(merged) - fields
    if unknown:
        raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
    try:
        merged["learning"] = learnmod.LearningConfig(**merged.get("learning", {}))
        merged["env"] = envmod.EnvConfig(**merged.get("env", {}))
        return ScenarioConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load(path, base=None):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read scenario config {path}: {exc}") from exc
    return from_dict(data, base=base)


def with_param(cfg, path, value):
    """Return ``cfg`` with the dotted ``path`` (e.g. ``learning.learning_rate``) set to ``value``."""
    data = cfg.to_dict()
    node = data
    keys = path.split(".")
    for k in keys[:-1]:
        if not isinstance(node.get(k), dict):
            raise ConfigError(f"{path!r} does not name a nested scenario field")
        node = node[k]
    if keys[-1] not in node:
        raise ConfigError(f"unknown scenario parameter {path!r}")
    node[keys[-1]] = value
    return from_dict(data, base=None)


def _deep_merge(a, b):
    out = copy.deepcopy(a)
    for k, v in b.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict) and k != "model_overrides":
            out[k] = _deep_merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


# ---------------------------------------------------------------------------
# models


def true_model(cfg):
    """The correctly specified model for the scenario's case (also drives observations)."""
    if cfg.case in ("case1", "case1_1"):
        m = modelmod.build_case1(preference=cfg.preference)
    else:
        m = modelmod.build_case2(p_correct=cfg.p_correct, preference=cfg.preference)
    return m.replace(policy_len=cfg.policy_len, policy_restriction=cfg.policy_restriction)


def agent_model(cfg, rng):
    """The model the agent starts with: corrupted, re-initialized or overridden as configured."""
    m = true_model(cfg)
    if cfg.case == "case1_1":
        m = modelmod.corrupt_model(m, "both")
    if cfg.strong_food_preference:
        m = modelmod.set_strong_food_preference(m, cfg.preference)
    if cfg.learning.init_mode == learnmod.RANDOM_DIRICHLET:
        m = learnmod.init_random_B(m, rng)
    elif cfg.learning.init_mode == learnmod.EXTREME:
        m = modelmod.set_extreme_B(m)
    m = modelmod.apply_overrides(m, cfg.model_overrides)
    return modelmod.check(m)


# ---------------------------------------------------------------------------
# catalog


def _case2(id, learn, init=learnmod.RANDOM_DIRICHLET, **kw):
    lc = learnmod.LearningConfig(enabled=learn, learning_rate=CASE2_LEARNING_RATE, init_mode=init)
    kw.setdefault("env", CASE2_ENV)
    return ScenarioConfig(id=id, case="case2", learning=lc, **kw)


def catalog():
    return [
        ScenarioConfig(id="case1", case="case1", policy_len=1, env=envmod.STATIC,
                       num_agents=1, num_runs_per_agent=1),
        ScenarioConfig(id="case1_1", case="case1_1", policy_len=1, env=envmod.STATIC,
                       num_agents=5, num_runs_per_agent=1),
        _case2("case2", learn=False),
        _case2("case2_learning", learn=True),
        _case2("case2_correctB", learn=False, init=learnmod.CORRECT),
        _case2("case2_extremeB", learn=False, init=learnmod.EXTREME),
        _case2("case2_extremeB_learning", learn=True, init=learnmod.EXTREME),
        _case2("case2_strongpref", learn=False, strong_food_preference=True),
        _case2("case2_strongpref_learning", learn=True, strong_food_preference=True),
        _case2("case2_rates", learn=False, env=CASE2_RATE_ENV),
        _case2("case2_rates_learning", learn=True, env=CASE2_RATE_ENV),
        _case2("case2_plen1", learn=False, policy_len=1),
        _case2("case2_plen1_learning", learn=True, policy_len=1),
    ]


def catalog_by_id():
    return {c.id: c for c in catalog()}


def get(scenario_id):
    try:
        return catalog_by_id()[scenario_id]
    except KeyError:
        raise ConfigError(f"unknown scenario {scenario_id!r}") from None
