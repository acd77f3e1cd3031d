"""Generative models for the forager: construction, validation, variation, JSON.

Conventions
-----------
* Actions are shared by every factor: ``DONT_EAT = 0`` and ``EAT = 1``.
* ``A[m]`` has shape ``(num_outcomes, levels of source factor)``.
* ``B[f]`` has shape ``(S_f, S_f, *levels of dependencies, num_actions)``;
  ``B[f][i, j, ..., k]`` is the probability of moving to level ``i`` from
  level ``j`` under action ``k`` (given the dependency levels in between).
* ``C[m]`` holds unnormalized log-preferences over outcomes of modality ``m``.
"""

import dataclasses
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import maths
from .errors import InvalidModel

DONT_EAT = 0
EAT = 1
ACTION_NAMES = ("dont_eat", "eat")

FULL = "full"
CONSTANT_ACTION = "constant-action"

DEFAULT_PREFERENCE = 4.0
DEFAULT_P_CORRECT = 0.9


@dataclass(frozen=True)
class FactorSpec:
    name: str
    num_levels: int
    dependencies: tuple = ()
    num_actions: int = 2


@dataclass(frozen=True)
class ModalitySpec:
    name: str
    num_outcomes: int
    source_factor: int


def _frozen(arrays):
    out = []
    for a in arrays:
        a = np.array(a, dtype=float)
        a.setflags(write=False)
        out.append(a)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class GenerativeModel:
    factors: tuple
    modalities: tuple
    A: tuple
    B: tuple
    C: tuple
    D: tuple
    policy_len: int = 1
    policy_restriction: str = FULL
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "modalities", tuple(self.modalities))
        for name in ("A", "B", "C", "D"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def num_factors(self):
        return len(self.factors)

    @property
    def num_modalities(self):
        return len(self.modalities)

    @property
    def num_actions(self):
        return self.factors[0].num_actions

    @property
    def num_states(self):
        return tuple(f.num_levels for f in self.factors)

    @property
    def num_obs(self):
        return tuple(m.num_outcomes for m in self.modalities)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def factor_index(self, name):
        for i, f in enumerate(self.factors):
            if f.name == name:
                return i
        raise KeyError(name)

    def modality_index(self, name):
        for i, m in enumerate(self.modalities):
            if m.name == name:
                return i
        raise KeyError(name)

    def equals(self, other, atol=0.0):
        """Structural and numerical equality (arrays compared with ``atol``)."""
        if (self.factors, self.modalities, self.policy_len, self.policy_restriction) != (
            other.factors,
            other.modalities,
            other.policy_len,
            other.policy_restriction,
        ):
            return False
        for name in ("A", "B", "C", "D"):
            for x, y in zip(getattr(self, name), getattr(other, name)):
                if x.shape != y.shape or not np.allclose(x, y, rtol=0.0, atol=atol):
                    return False
        return True


# ---------------------------------------------------------------------------
# builders


def _shift_table(num_levels, num_actions, step_for_action):
    """Deterministic ``(S, S, U)`` table moving each level by a per-action step, clamped."""
    B = np.zeros((num_levels, num_levels, num_actions))
    for u in range(num_actions):
        for j in range(num_levels):
            i = min(max(j + step_for_action(u), 0), num_levels - 1)
            B[i, j, u] = 1.0
    return B


def _satiety_table(num_levels, num_food_levels, num_actions, sated_level=None):
    """Satiety transitions conditioned on (previous satiety, previous food, action).

    Eating with food > 0 raises satiety by one (or to ``sated_level`` when given,
    which is how the two-level static model works); anything else lowers it by one.
    """
    B = np.zeros((num_levels, num_levels, num_food_levels, num_actions))
    top = num_levels - 1
    for j, food, u in itertools.product(range(num_levels), range(num_food_levels), range(num_actions)):
        if u == EAT and food > 0:
            i = top if sated_level is not None else min(j + 1, top)
        else:
            i = 0 if sated_level is not None else max(j - 1, 0)
        B[i, j, food, u] = 1.0
    return B


def noisy_identity(num_levels, p_correct=DEFAULT_P_CORRECT):
    """Near-identity likelihood: ``p_correct`` on the diagonal, the rest split over neighbours."""
    A = np.zeros((num_levels, num_levels))
    for s in range(num_levels):
        neighbours = [n for n in (s - 1, s + 1) if 0 <= n < num_levels]
        A[s, s] = p_correct if neighbours else 1.0
        for n in neighbours:
            A[n, s] = (1.0 - p_correct) / len(neighbours)
    return A


def _preference(num_outcomes, level, magnitude=DEFAULT_PREFERENCE):
    c = np.zeros(num_outcomes)
    c[level] = magnitude
    return c


def build_case1(preference=DEFAULT_PREFERENCE):
    """Static two-level world: identity likelihood, food unaffected by actions."""
    factors = (
        FactorSpec("food", 2),
        FactorSpec("satiety", 2, dependencies=(0,)),
    )
    modalities = (ModalitySpec("food", 2, 0), ModalitySpec("satiety", 2, 1))
    A = [np.eye(2), np.eye(2)]
    B = [
        _shift_table(2, 2, lambda u: 0),
        _satiety_table(2, 2, 2, sated_level=1),
    ]
    C = [_preference(2, 1, preference), _preference(2, 1, preference)]
    D = [np.full(2, 0.5), np.full(2, 0.5)]
    return GenerativeModel(factors, modalities, A, B, C, D, policy_len=1, policy_restriction=FULL)


def build_case2(p_correct=DEFAULT_P_CORRECT, preference=DEFAULT_PREFERENCE, policy_len=3,
                policy_restriction=CONSTANT_ACTION):
    """Dynamic three-level world where eating depletes food and abstaining replenishes it."""
    factors = (
        FactorSpec("food", 3),
        FactorSpec("satiety", 3, dependencies=(0,)),
    )
    modalities = (ModalitySpec("food", 3, 0), ModalitySpec("satiety", 3, 1))
    A = [noisy_identity(3, p_correct), noisy_identity(3, p_correct)]
    B = [
        _shift_table(3, 2, lambda u: -1 if u == EAT else +1),
        _satiety_table(3, 3, 2),
    ]
    C = [np.zeros(3), _preference(3, 2, preference)]
    D = [np.full(3, 1 / 3), np.full(3, 1 / 3)]
    return GenerativeModel(factors, modalities, A, B, C, D, policy_len=policy_len,
                           policy_restriction=policy_restriction)


# ---------------------------------------------------------------------------
# policies


def enumerate_policies(model):
    """All candidate action sequences of length ``model.policy_len``.

    ``full`` gives every sequence in lexicographic order; ``constant-action``
    gives one sequence per action, repeating that action over the horizon.
    """
    if "policies" not in model._cache:
        U, T = model.num_actions, model.policy_len
        if model.policy_restriction == CONSTANT_ACTION:
            policies = [(u,) * T for u in range(U)]
        else:
            policies = list(itertools.product(range(U), repeat=T))
        model._cache["policies"] = policies
    return list(model._cache["policies"])


# ---------------------------------------------------------------------------
# variations


def corrupt_model(model, mode="both"):
    """Return a model with reversed likelihoods (``flip_A``), swapped actions (``flip_B``), or both.

    Both corruptions are permutations, so applying the same mode twice restores
    the original model.
    """
    if mode not in ("flip_A", "flip_B", "both"):
        raise ValueError(f"unknown corruption mode {mode!r}")
    A, B = model.A, model.B
    if mode in ("flip_A", "both"):
        A = [a[::-1] for a in A]
    if mode in ("flip_B", "both"):
        B = [b[..., ::-1] for b in B]
    return model.replace(A=A, B=B)


def _true_targets(B):
    return np.argmax(B, axis=0)


def set_extreme_B(model, rng=None):
    """Saturate every transition column on a wrong target.

    The wrong target is the column's most probable next level rotated by +1
    modulo the number of levels, so the construction is deterministic and
    ``rng`` is accepted only for call compatibility with the other initializers.
    """
    new_B = []
    for f, b in zip(model.factors, model.B):
        target = (_true_targets(b) + 1) % f.num_levels
        out = np.zeros_like(b)
        np.put_along_axis(out, target[None], 1.0, axis=0)
        new_B.append(out)
    return model.replace(B=new_B)


def set_strong_food_preference(model, magnitude=DEFAULT_PREFERENCE):
    m = model.modality_index("food")
    C = list(model.C)
    C[m] = _preference(model.modalities[m].num_outcomes, model.modalities[m].num_outcomes - 1, magnitude)
    return model.replace(C=C)


# ---------------------------------------------------------------------------
# validation


def _column_violations(label, table, tol):
    problems = []
    if np.any(~np.isfinite(table)):
        problems.append(f"{label}: non-finite entries")
        return problems
    neg = np.argwhere(table < -tol)
    for idx in neg:
        problems.append(f"{label}{list(idx)}: negative entry {table[tuple(idx)]:.6g}")
    sums = table.sum(axis=0)
    for idx in np.argwhere(np.abs(sums - 1.0) > tol):
        problems.append(f"{label}[:, {', '.join(map(str, idx))}]: column sums to {sums[tuple(idx)]:.6g}")
    return problems


def validate(model, tol=maths.TOL):
    """Return the list of invariant violations (empty when the model is valid)."""
    problems = []
    F = model.num_factors
    if F == 0:
        return ["model has no factors"]
    for f, spec in enumerate(model.factors):
        deps = tuple(spec.dependencies)
        if f in deps:
            problems.append(f"factor {spec.name!r} depends on itself")
        if len(set(deps)) != len(deps):
            problems.append(f"factor {spec.name!r} has duplicate dependencies")
        if any(not 0 <= d < F for d in deps):
            problems.append(f"factor {spec.name!r} has out-of-range dependencies {deps}")
        if spec.num_actions != model.num_actions:
            problems.append(f"factor {spec.name!r} has {spec.num_actions} actions, expected {model.num_actions}")
    if problems:
        return problems

    if len(model.A) != model.num_modalities:
        problems.append(f"expected {model.num_modalities} A arrays, got {len(model.A)}")
    for m, (spec, a) in enumerate(zip(model.modalities, model.A)):
        if not 0 <= spec.source_factor < F:
            problems.append(f"modality {spec.name!r}: source factor {spec.source_factor} out of range")
            continue
        levels = model.factors[spec.source_factor].num_levels
        if spec.num_outcomes != levels:
            problems.append(f"modality {spec.name!r}: {spec.num_outcomes} outcomes but source has {levels} levels")
        if a.shape != (spec.num_outcomes, levels):
            problems.append(f"A[{m}] has shape {a.shape}, expected {(spec.num_outcomes, levels)}")
            continue
        problems += _column_violations(f"A[{m}]", a, tol)

    if len(model.B) != F:
        problems.append(f"expected {F} B arrays, got {len(model.B)}")
    for f, (spec, b) in enumerate(zip(model.factors, model.B)):
        S = spec.num_levels
        expected = (S, S, *(model.factors[d].num_levels for d in spec.dependencies), spec.num_actions)
        if b.shape != expected:
            problems.append(f"B[{f}] ({spec.name}) has shape {b.shape}, expected {expected}")
            continue
        problems += _column_violations(f"B[{f}] ({spec.name})", b, tol)

    if len(model.C) != model.num_modalities:
        problems.append(f"expected {model.num_modalities} C vectors, got {len(model.C)}")
    for m, (spec, c) in enumerate(zip(model.modalities, model.C)):
        if c.shape != (spec.num_outcomes,):
            problems.append(f"C[{m}] has shape {c.shape}, expected {(spec.num_outcomes,)}")
        elif not np.all(np.isfinite(c)):
            problems.append(f"C[{m}]: non-finite preferences {c.tolist()}")

    if len(model.D) != F:
        problems.append(f"expected {F} D vectors, got {len(model.D)}")
    for f, (spec, d) in enumerate(zip(model.factors, model.D)):
        if d.shape != (spec.num_levels,) or not maths.is_categorical(d, tol):
            problems.append(f"D[{f}] ({spec.name}) is not a categorical over {spec.num_levels} levels")

    if model.policy_len < 1:
        problems.append(f"policy_len must be >= 1, got {model.policy_len}")
    if model.policy_restriction not in (FULL, CONSTANT_ACTION):
        problems.append(f"unknown policy_restriction {model.policy_restriction!r}")
    return problems


def check(model):
    """Raise :class:`InvalidModel` if ``model`` has any violation, else return it."""
    problems = validate(model)
    if problems:
        raise InvalidModel(problems)
    return model


# ---------------------------------------------------------------------------
# JSON schema
#
# {
#   "factors":    [{"name", "num_levels", "dependencies", "num_actions"}, ...],
#   "modalities": [{"name", "num_outcomes", "source_factor"}, ...],
#   "A": [{"shape": [...], "data": [row-major floats]}, ...],
#   "B": [{"shape": [...], "data": [...]}, ...],
#   "C": [[floats], ...],
#   "D": [[floats], ...],
#   "policy_len": int,
#   "policy_restriction": "full" | "constant-action"
# }


def _array_to_json(a):
    return {"shape": list(a.shape), "data": [float(x) for x in a.ravel(order="C")]}


def _array_from_json(obj):
    if isinstance(obj, dict):
        return np.asarray(obj["data"], dtype=float).reshape(obj["shape"], order="C")
    return np.asarray(obj, dtype=float)


def to_dict(model):
    return {
        "factors": [
            {"name": f.name, "num_levels": f.num_levels, "dependencies": list(f.dependencies),
             "num_actions": f.num_actions}
            for f in model.factors
        ],
        "modalities": [
            {"name": m.name, "num_outcomes": m.num_outcomes, "source_factor": m.source_factor}
            for m in model.modalities
        ],
        "A": [_array_to_json(a) for a in model.A],
        "B": [_array_to_json(b) for b in model.B],
        "C": [c.tolist() for c in model.C],
        "D": [d.tolist() for d in model.D],
        "policy_len": model.policy_len,
        "policy_restriction": model.policy_restriction,
    }


def from_dict(data):
    factors = [
        FactorSpec(f["name"], int(f["num_levels"]), tuple(f.get("dependencies", ())), int(f.get("num_actions", 2)))
        for f in data["factors"]
    ]
    modalities = [ModalitySpec(m["name"], int(m["num_outcomes"]), int(m["source_factor"])) for m in data["modalities"]]
    return GenerativeModel(
        factors,
        modalities,
        A=[_array_from_json(a) for a in data["A"]],
        B=[_array_from_json(b) for b in data["B"]],
        C=[np.asarray(c, dtype=float) for c in data["C"]],
        D=[np.asarray(d, dtype=float) for d in data["D"]],
        policy_len=int(data.get("policy_len", 1)),
        policy_restriction=data.get("policy_restriction", FULL),
    )


def apply_overrides(model, overrides):
    """Patch the serialized form of ``model`` with ``overrides`` and rebuild it."""
    if not overrides:
        return model
    data = to_dict(model)
    data.update(overrides)
    return from_dict(data)
