"""Scripted proportional-controller expert that produces demonstration actions."""

from __future__ import annotations

import math

import numpy as np

from ..types import D_ACTION, STATUS_COL
from . import geometry as geo
from .sim import TabletopSim

H_TERM = 5  # terminal-status steps appended after the place event
_GRASP_DIST = 0.45 * geo.R_GRASP
_RELEASE_DIST = 0.5


class ExpertError(RuntimeError):
    pass


def _wrap(a: float) -> float:
    return math.remainder(a, 2 * math.pi)


def _base_drive(sim: TabletopSim, goal: np.ndarray) -> tuple[float, float]:
    """Heading-then-forward proportional drive toward a point."""
    dx, dy = goal[0] - sim.base[0], goal[1] - sim.base[1]
    err = _wrap(math.atan2(dy, dx) - sim.base[2])
    w = float(np.clip(2.0 * err, -geo.W_BASE_MAX, geo.W_BASE_MAX))
    v = geo.V_BASE_MAX if abs(err) < 0.5 else 0.1
    return v, w


def scripted_expert(sim: TabletopSim, target_oid: int, container_name: str) -> np.ndarray:
    """One action row (including the status dim) toward put-target-into-container.

    Phases are derived from simulator ground truth each call: approach, grasp,
    transport (driving the base when the container is out of reach), release,
    then terminal status.
    """
    target = sim.scene.object_by_id(target_oid)
    if not (0 <= target.x <= geo.TABLE and 0 <= target.y <= geo.TABLE):
        raise ExpertError(f"target object {target_oid} is off the table")
    container = sim.scene.container_by_name(container_name)
    if container is None:
        raise ExpertError(f"container {container_name!r} not in scene")

    a = np.zeros(D_ACTION, dtype=np.float32)
    if sim.placed.get(target_oid) is not None:
        a[STATUS_COL] = 1.0
        return a

    holding = sim.grasped == target_oid
    goal = np.array([container.x, container.y]) if holding else np.array(
        [sim.obj_xy[target_oid, 0], sim.obj_xy[target_oid, 1]]
    )
    delta = goal - sim.eff
    dist = float(np.hypot(*delta))

    # Drive the base whenever the current goal sits outside a comfortable reach.
    if float(np.hypot(goal[0] - sim.base[0], goal[1] - sim.base[1])) > geo.REACH - 0.8:
        a[3], a[4] = _base_drive(sim, goal)

    step = np.clip(delta, -geo.V_EFF_MAX, geo.V_EFF_MAX)
    if holding:
        a[:2] = step
        a[2] = 0.0 if dist < _RELEASE_DIST else 1.0
    elif sim.grasped is None:
        if dist <= _GRASP_DIST:
            a[2] = 1.0  # close on the target
        else:
            a[:2] = step
            a[2] = 0.0
    else:
        a[2] = 0.0  # holding the wrong object: drop it
    a[STATUS_COL] = 0.0
    return a


def run_expert_episode(
    sim: TabletopSim,
    target_oid: int,
    container_name: str,
    max_steps: int = 120,
    h_term: int = H_TERM,
) -> tuple[list, bool]:
    """Roll the expert to completion; returns (per-step records, success).

    Each record is (observation_before, state_before, action). After the place
    event the expert emits h_term zero-motion rows with status 1.
    """
    obs, state = sim.reset()
    steps = []
    placed_at = None
    for _ in range(max_steps):
        action = scripted_expert(sim, target_oid, container_name)
        steps.append((obs, state, action))
        obs, state, events = sim.step(action)
        if placed_at is None and any(
            e.kind == "placed" and e.oid == target_oid and e.container == container_name
            for e in events
        ):
            placed_at = len(steps)
        if placed_at is not None and len(steps) >= placed_at + h_term:
            return steps, True
    return steps, placed_at is not None
