"""Perception and planning: state inference, expected free energy, action choice.

A belief state is a list with one categorical per hidden-state factor.
Because each observation modality reads a single factor and the prior over
factors is a product, one pass of Bayes per factor gives the exact posterior.

Predictions over a planning horizon propagate the *joint* distribution over
all factors (at most nine states here), so cross-factor dependencies such as
satiety depending on food are handled without a mean-field approximation;
per-factor marginals are read off at every step.
"""

import string
from dataclasses import dataclass

import numpy as np

from . import maths
from .errors import InvalidObservation
from .model import enumerate_policies

DEFAULT_GAMMA = 16.0


@dataclass(frozen=True)
class PolicyPosterior:
    policies: list
    q: np.ndarray
    G: np.ndarray
    gamma: float


def joint_transition(model):
    """Full transition tensor of shape ``(N, N, U)`` over the flattened joint state.

    Entry ``[n, p, u]`` is ``prod_f B[f][n_f, p_f, p_deps(f), u]`` with ``n`` and
    ``p`` indexing joint states in C order.
    """
    if "joint_transition" in model._cache:
        return model._cache["joint_transition"]
    F = model.num_factors
    nxt = string.ascii_lowercase[:F]
    prv = string.ascii_uppercase[:F]
    terms = []
    for f, spec in enumerate(model.factors):
        terms.append(nxt[f] + prv[f] + "".join(prv[d] for d in spec.dependencies) + "u")
    expr = ",".join(terms) + "->" + nxt + prv + "u"
    T = np.einsum(expr, *model.B)
    N = int(np.prod(model.num_states))
    T = T.reshape(N, N, model.num_actions)
    model._cache["joint_transition"] = T
    return T


def _joint_from(belief):
    joint = belief[0]
    for q in belief[1:]:
        joint = np.multiply.outer(joint, q)
    return joint.ravel()


def _marginals(joint_flat, num_states):
    joint = joint_flat.reshape(num_states)
    out = []
    for f in range(len(num_states)):
        axes = tuple(a for a in range(len(num_states)) if a != f)
        out.append(joint.sum(axis=axes))
    return out


def push_belief(belief, action, model):
    """One-step prediction of per-factor beliefs under ``action``."""
    T = joint_transition(model)
    return _marginals(T[:, :, action] @ _joint_from(belief), model.num_states)


def infer_states(obs, model, prior=None, prev_action=None):
    """Posterior over each factor given one outcome index per modality.

    The empirical prior is ``model.D`` at the first step, otherwise ``prior``
    pushed through the transition model under ``prev_action``.
    """
    if len(obs) != model.num_modalities:
        raise InvalidObservation(f"expected {model.num_modalities} observations, got {len(obs)}")
    for m, (o, spec) in enumerate(zip(obs, model.modalities)):
        if not (isinstance(o, (int, np.integer)) and 0 <= o < spec.num_outcomes):
            raise InvalidObservation(f"observation {o!r} out of range for modality {spec.name!r}")

    if prev_action is None or prior is None:
        empirical = [np.asarray(d) for d in model.D]
    else:
        empirical = push_belief(prior, prev_action, model)

    log_post = [maths.log_stable(p) for p in empirical]
    for o, spec, a in zip(obs, model.modalities, model.A):
        log_post[spec.source_factor] = log_post[spec.source_factor] + maths.log_stable(a[o, :])
    return [maths.softmax(lp) for lp in log_post]


def predict_states(belief, policy, model):
    """Per-factor beliefs after each action of ``policy`` (one entry per step)."""
    T = joint_transition(model)
    joint = _joint_from(belief)
    out = []
    for u in policy:
        joint = T[:, :, u] @ joint
        out.append(_marginals(joint, model.num_states))
    return out


def expected_observations(belief, model):
    return [a @ belief[spec.source_factor] for spec, a in zip(model.modalities, model.A)]


def _ambiguity_tables(model):
    if "ambiguity" not in model._cache:
        model._cache["ambiguity"] = [maths.column_entropies(a) for a in model.A]
    return model._cache["ambiguity"]


def _preference_dists(model):
    if "preferences" not in model._cache:
        model._cache["preferences"] = [maths.softmax(c) for c in model.C]
    return model._cache["preferences"]


def expected_free_energy(policy, belief, model):
    """Risk plus ambiguity summed over the horizon and modalities (lower is better)."""
    H_A = _ambiguity_tables(model)
    prefs = _preference_dists(model)
    G = 0.0
    for qs in predict_states(belief, policy, model):
        for m, (spec, qo) in enumerate(zip(model.modalities, expected_observations(qs, model))):
            G += maths.kl_divergence(qo, prefs[m])
            G += float(qs[spec.source_factor] @ H_A[m])
    return G


def infer_policies(belief, model, gamma=DEFAULT_GAMMA):
    policies = enumerate_policies(model)
    G = np.array([expected_free_energy(pi, belief, model) for pi in policies])
    q = maths.softmax(-gamma * G)
    return PolicyPosterior(policies, q, G, float(gamma))


def action_marginal(pp, num_actions):
    """Probability of each first action under the policy posterior."""
    p = np.zeros(num_actions)
    for pi, w in zip(pp.policies, pp.q):
        p[pi[0]] += w
    return p


def select_action(pp, model, mode="argmax", rng=None):
    p = action_marginal(pp, model.num_actions)
    if mode == "argmax":
        return maths.argmax_tiebreak(p, rng)
    if mode == "sample":
        return maths.sample(rng, p)
    raise ValueError(f"unknown action selection mode {mode!r}")
