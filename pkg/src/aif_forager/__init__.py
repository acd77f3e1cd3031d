"""Active-inference forager in static and dynamic food worlds.

The package is a small numpy library:

``maths``      categorical primitives and seeded randomness
``model``      generative model (A, B, C, D), builders, validation, JSON
``inference``  state inference, expected free energy, action selection
``learning``   online learning of the transition model
``env``        the ground-truth food world
``harness``    scenario catalog, episode runner and file emission
"""

from . import env, inference, learning, maths, model
from .errors import (ConfigError, DeadAgent, ForagerError, InvalidDistribution, InvalidInput,
                     InvalidModel, InvalidObservation, ShapeError, EmitError)

__version__ = "0.1.0"

__all__ = [
    "env", "inference", "learning", "maths", "model",
    "ConfigError", "DeadAgent", "ForagerError", "InvalidDistribution", "InvalidInput",
    "InvalidModel", "InvalidObservation", "ShapeError", "EmitError",
]
