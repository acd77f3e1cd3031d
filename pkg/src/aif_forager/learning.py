"""Online learning of the transition model from experienced state changes."""

import itertools
from dataclasses import dataclass

import numpy as np

from . import maths
from .errors import ConfigError

CORRECT = "correct"
RANDOM_DIRICHLET = "random_dirichlet"
EXTREME = "extreme"
INIT_MODES = (CORRECT, RANDOM_DIRICHLET, EXTREME)


@dataclass(frozen=True)
class LearningConfig:
    enabled: bool = False
    learning_rate: float = 0.3
    init_mode: str = CORRECT
    # keep learned B across the sequential episodes of one agent
    persist: bool = True

    def __post_init__(self):
        if not 0.0 < self.learning_rate <= 1.0:
            raise ConfigError(f"learning_rate must lie in (0, 1], got {self.learning_rate}")
        if self.init_mode not in INIT_MODES:
            raise ConfigError(f"init_mode must be one of {INIT_MODES}, got {self.init_mode!r}")


def init_random_B(model, rng):
    """Replace every transition column with a draw from a flat Dirichlet."""
    new_B = []
    for b in model.B:
        out = np.empty_like(b)
        ones = np.ones(b.shape[0])
        for idx in itertools.product(*(range(n) for n in b.shape[1:])):
            out[(slice(None), *idx)] = maths.dirichlet_sample(rng, ones)
        new_B.append(out)
    return model.replace(B=new_B)


def update_B(model, prev_states, next_states, action, cfg):
    """Reinforce the observed transition of every factor and renormalize its column.

    The column for factor ``f`` is selected by its own previous level, the
    previous levels of the factors it depends on, and the action; the entry
    for the observed next level gains ``cfg.learning_rate`` before the column
    is divided by its new sum.
    """
    new_B = []
    for f, (spec, b) in enumerate(zip(model.factors, model.B)):
        idx = (prev_states[f], *(prev_states[d] for d in spec.dependencies), action)
        out = np.array(b)
        column = out[(slice(None), *idx)]
        column[next_states[f]] += cfg.learning_rate
        out[(slice(None), *idx)] = column / column.sum()
        new_B.append(out)
    return model.replace(B=new_B)


def map_states(belief):
    # np.argmax returns the first maximum, i.e. ties resolve to the lower index
    return tuple(int(np.argmax(q)) for q in belief)


def experienced_transition(prev_belief, next_belief):
    """MAP levels of each factor before and after a step."""
    return map_states(prev_belief), map_states(next_belief)
