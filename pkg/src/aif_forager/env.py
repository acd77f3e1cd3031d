"""Ground-truth food world (the generative process).

Food and satiety are tracked as continuous levels so that fractional rates
are representable; they are discretized (round half up) only when an
observation is produced.
"""

import math
from dataclasses import dataclass, replace

from . import maths
from .errors import ConfigError, DeadAgent
from .model import EAT

CASE1 = "case1"
CASE2 = "case2"


@dataclass(frozen=True)
class EnvConfig:
    food_regen: float = 1.0
    food_deplete: float = 1.0
    satiety_gain: float = 1.0
    satiety_decay: float = 1.0
    food_max: float = 2.0
    satiety_max: float = 2.0
    static: bool = False
    # satiety reaching zero ends the episode
    lethal: bool = True
    # draw observations through the likelihood; False reports the true level
    noisy_observations: bool = True

    def __post_init__(self):
        rates = (self.food_regen, self.food_deplete, self.satiety_gain, self.satiety_decay)
        if any(r < 0 for r in rates):
            raise ConfigError(f"environment rates must be non-negative: {rates}")
        if self.food_max <= 0 or self.satiety_max <= 0:
            raise ConfigError("food_max and satiety_max must be positive")


STATIC = EnvConfig(food_max=1.0, satiety_max=1.0, static=True, lethal=False)
DYNAMIC = EnvConfig()
RATE_VARIANT = EnvConfig(food_regen=0.5, food_deplete=1.0, satiety_gain=0.8, satiety_decay=0.2)


@dataclass(frozen=True)
class EnvState:
    food_level: float
    satiety_level: float
    alive: bool = True
    t: int = 0


def init_env(cfg, case=CASE2):
    if case == CASE1:
        return EnvState(food_level=min(1.0, cfg.food_max), satiety_level=0.0)
    return EnvState(food_level=cfg.food_max, satiety_level=cfg.satiety_max / 2)


def _clamp(x, hi):
    return min(max(x, 0.0), hi)


def step(state, action, cfg):
    """Advance the world by one action; a dead state cannot be stepped."""
    if not state.alive:
        raise DeadAgent(f"agent died before step {state.t}")
    food, satiety = state.food_level, state.satiety_level
    eat = action == EAT
    if cfg.static:
        new_food = food
        new_satiety = cfg.satiety_max if (eat and food > 0) else 0.0
    elif eat:
        new_food = _clamp(food - cfg.food_deplete, cfg.food_max)
        if food > 0:
            new_satiety = _clamp(satiety + cfg.satiety_gain, cfg.satiety_max)
        else:
            new_satiety = _clamp(satiety - cfg.satiety_decay, cfg.satiety_max)
    else:
        new_food = _clamp(food + cfg.food_regen, cfg.food_max)
        new_satiety = _clamp(satiety - cfg.satiety_decay, cfg.satiety_max)
    alive = not (cfg.lethal and new_satiety <= 0)
    return replace(state, food_level=new_food, satiety_level=new_satiety, alive=alive, t=state.t + 1)


def discretize(level, max_level, num_levels):
    """Map a continuous level onto ``0..num_levels-1`` with round-half-up."""
    scaled = level * (num_levels - 1) / max_level
    return min(max(int(math.floor(scaled + 0.5)), 0), num_levels - 1)


def true_levels(state, cfg, model):
    return (
        discretize(state.food_level, cfg.food_max, model.factors[0].num_levels),
        discretize(state.satiety_level, cfg.satiety_max, model.factors[1].num_levels),
    )


def observe(state, model, rng, cfg=DYNAMIC, terminal=False):
    """One outcome per modality, sampled from the likelihood column of the true level.

    ``model`` supplies the likelihood of the *process*; pass the uncorrupted
    model when the agent's own beliefs are deliberately wrong. ``terminal``
    permits the single observation of the state the agent died in.
    """
    if not state.alive and not terminal:
        raise DeadAgent(f"cannot observe a dead agent at step {state.t}")
    levels = true_levels(state, cfg, model)
    obs = []
    for spec, a in zip(model.modalities, model.A):
        level = levels[spec.source_factor]
        obs.append(maths.sample(rng, a[:, level]) if cfg.noisy_observations else level)
    return tuple(obs)
