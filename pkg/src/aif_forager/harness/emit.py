"""CSV traces and SVG panels for finished runs.

A trace CSV has one row per completed timestep::

    t,action,obs_food,obs_satiety,belief_food_0,...,belief_satiety_0,...,food_level,satiety_level,alive

``obs_*`` and ``belief_*`` describe what the agent saw and believed when it
chose ``action``; ``food_level`` and ``satiety_level`` are the true levels
after the action. Files are UTF-8 with LF line endings and floats are
written with a fixed format, so equal inputs give byte-identical files.

A summary is written to a directory holding ``summary.json`` (scenario id
and horizon), ``survival.csv`` (one row per agent and run),
``trajectory.csv`` (per-timestep means) and ``traces/`` with one trace per run.
"""

import csv
import json
import os

import numpy as np

from ..errors import EmitError
from .runner import BatchSummary, RunRecord, StepRecord, summarize

FACTORS = ("food", "satiety")
FLOAT_FMT = "{:.12g}"


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return FLOAT_FMT.format(float(x))


def trace_header(record):
    sizes = [len(q) for q in record.rows[0].belief] if record.rows else [0, 0]
    cols = ["t", "action"] + [f"obs_{n}" for n in FACTORS]
    for name, n in zip(FACTORS, sizes):
        cols += [f"belief_{name}_{i}" for i in range(n)]
    return cols + ["food_level", "satiety_level", "alive"]


def trace_rows(record):
    for row in record.rows:
        out = [row.t, row.action, *row.obs]
        for q in row.belief:
            out += list(q)
        out += [row.food_level, row.satiety_level, row.alive]
        yield [_fmt(v) for v in out]


def _write_csv(path, header, rows):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def _makedirs(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise EmitError(f"cannot create directory {path}: {exc.strerror or exc}") from exc


def trace_name(record):
    return f"agent{record.agent:03d}_run{record.run:03d}.csv"


def emit_csv(obj, path):
    """Write a run trace to the file ``path``, or a summary into the directory ``path``.

    Returns the list of files written.
    """
    if isinstance(obj, RunRecord):
        return [_write_csv(path, trace_header(obj), trace_rows(obj))]
    if not isinstance(obj, BatchSummary):
        raise TypeError(f"expected RunRecord or BatchSummary, got {type(obj).__name__}")
    _makedirs(os.path.join(path, "traces"))
    written = []
    meta = os.path.join(path, "summary.json")
    try:
        with open(meta, "w", encoding="utf-8", newline="\n") as fh:
            json.dump({"scenario_id": obj.scenario_id, "timesteps": obj.timesteps}, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise EmitError(f"cannot write {meta}: {exc.strerror or exc}") from exc
    written.append(meta)

    survival = [[_fmt(r.agent), _fmt(r.run), _fmt(r.seed), _fmt(r.survival_time)]
                for recs in obj.records for r in recs]
    written.append(_write_csv(os.path.join(path, "survival.csv"),
                              ["agent", "run", "seed", "survival_time"], survival))
    traj = [[_fmt(t), _fmt(obj.rows_per_step[t]), _fmt(obj.eat_freq[t]), _fmt(obj.mean_food[t]),
             _fmt(obj.mean_satiety[t])] for t in range(obj.timesteps)]
    written.append(_write_csv(os.path.join(path, "trajectory.csv"),
                              ["t", "rows", "eat_freq", "mean_food", "mean_satiety"], traj))
    for recs in obj.records:
        for r in recs:
            written += emit_csv(r, os.path.join(path, "traces", trace_name(r)))
    return written


def _read_csv(path):
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return list(csv.DictReader(fh))
    except OSError as exc:
        raise EmitError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_trace(path, scenario_id="", seed=0, agent=0, run=0):
    rec = RunRecord(scenario_id, seed, agent=agent, run=run)
    for d in _read_csv(path):
        belief = []
        for name in FACTORS:
            keys = sorted((k for k in d if k.startswith(f"belief_{name}_")),
                          key=lambda k: int(k.rsplit("_", 1)[1]))
            belief.append(np.array([float(d[k]) for k in keys]))
        rec.rows.append(StepRecord(int(d["t"]), int(d["action"]),
                                   tuple(int(d[f"obs_{n}"]) for n in FACTORS), belief, None,
                                   float(d["food_level"]), float(d["satiety_level"]),
                                   d["alive"] == "1"))
    rec.survival_time = sum(r.alive for r in rec.rows)
    return rec


def load_summary(path):
    """Rebuild a summary from a directory written by :func:`emit_csv`."""
    meta_path = os.path.join(path, "summary.json")
    try:
        with open(meta_path, encoding="utf-8") as fh:
            meta = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise EmitError(f"cannot read {meta_path}: {exc}") from exc
    by_agent = {}
    for d in _read_csv(os.path.join(path, "survival.csv")):
        agent, run = int(d["agent"]), int(d["run"])
        rec = load_trace(os.path.join(path, "traces", f"agent{agent:03d}_run{run:03d}.csv"),
                         meta["scenario_id"], int(d["seed"]), agent, run)
        rec.survival_time = int(d["survival_time"])
        by_agent.setdefault(agent, []).append(rec)
    records = [sorted(by_agent[a], key=lambda r: r.run) for a in sorted(by_agent)]
    return summarize(meta["scenario_id"], int(meta["timesteps"]), records)


def emit_plots(summary, path):
    """Draw one SVG per panel into the directory ``path``.

    Panels: eat frequency, mean food level and mean satiety level per
    timestep, plus mean survival per run when agents ran more than one
    episode. Returns the files written.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not summary.records or not any(r.rows for recs in summary.records for r in recs):
        raise ValueError("cannot plot an empty summary")
    _makedirs(path)
    t = np.arange(summary.timesteps)
    panels = [
        ("actions", summary.eat_freq, "fraction eating"),
        ("food", summary.mean_food, "food level"),
        ("satiety", summary.mean_satiety, "satiety level"),
    ]
    written = []
    with matplotlib.rc_context({"svg.hashsalt": "aif-forager", "svg.fonttype": "none"}):
        for name, y, label in panels:
            fig, ax = plt.subplots(figsize=(5, 3))
            ax.plot(t, y, marker="o", drawstyle="steps-post" if name == "actions" else "default")
            ax.set_xlabel("timestep")
            ax.set_ylabel(label)
            ax.set_title(f"{summary.scenario_id}: {name}")
            written.append(_savefig(fig, os.path.join(path, f"{name}.svg")))
            plt.close(fig)
        if summary.survival.shape[1] > 1:
            runs = np.arange(1, summary.survival.shape[1] + 1)
            fig, ax = plt.subplots(figsize=(5, 3))
            ax.bar(runs, summary.mean_survival_per_run())
            ax.set_ylim(0, summary.timesteps)
            ax.set_xlabel("run")
            ax.set_ylabel("mean survival time")
            ax.set_title(f"{summary.scenario_id}: survival per run")
            written.append(_savefig(fig, os.path.join(path, "survival.svg")))
            plt.close(fig)
    return written


def _savefig(fig, path):
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
