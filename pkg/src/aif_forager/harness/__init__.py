"""Experiment harness: scenarios, batch runs, CSV traces and SVG plots."""

from .runner import BatchSummary, RunRecord, StepRecord, run_agent, run_batch, run_episode
from .scenarios import ScenarioConfig, catalog, get

__all__ = ["BatchSummary", "RunRecord", "StepRecord", "ScenarioConfig", "catalog", "get",
           "run_agent", "run_batch", "run_episode"]
