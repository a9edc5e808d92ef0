"""Demonstration-episode generators for robot and human embodiments."""

from __future__ import annotations

import numpy as np

from ..types import D_STATE, Episode, Instruction, STATE_VALID_HUMAN
from .expert import run_expert_episode
from .language import resolve_instruction
from .scene import SceneConfig, SchedulerState, build_scene, schedule_next
from .sim import TabletopSim
from .taxonomy import SEEN_BACKGROUNDS, UNSEEN_CATEGORIES


def _pack_episode(steps, instruction: Instruction, scene: SceneConfig, embodiment: str, seed: int) -> Episode:
    images = np.stack([obs.views for obs, _, _ in steps])
    states = np.stack([st.vector for _, st, _ in steps])
    actions = np.stack([a for _, _, a in steps])
    view_valid = steps[0][0].view_valid
    state_valid = STATE_VALID_HUMAN.copy() if embodiment == "human" else np.ones(D_STATE, dtype=bool)
    return Episode(
        instruction=instruction,
        images=images,
        states=states,
        actions=actions,
        view_valid=view_valid,
        state_valid=state_valid,
        embodiment=embodiment,
        scene=scene.to_dict(),
        seed=seed,
    )


def gen_robot_episode(state: SchedulerState, max_steps: int = 120) -> Episode | None:
    """One scheduled robot demonstration; None when the expert run fails the quality gate."""
    scene, text, meta = schedule_next(state)
    assert resolve_instruction(scene, text) == meta["target_oid"]
    sim = TabletopSim(scene)
    steps, ok = run_expert_episode(sim, meta["target_oid"], meta["container"], max_steps=max_steps)
    if not ok:
        return None
    return _pack_episode(steps, Instruction(text, meta=meta), scene, "robot", scene.seed)


def generate_robot_dataset(
    n_episodes: int, seed: int, p_far: float = 0.1, max_steps: int = 120
) -> tuple[list[Episode], int]:
    """Scheduler-driven robot corpus; returns (episodes, number discarded)."""
    state = SchedulerState(seed=seed, p_far=p_far)
    episodes: list[Episode] = []
    discarded = 0
    while len(episodes) < n_episodes:
        ep = gen_robot_episode(state, max_steps=max_steps)
        if ep is None:
            discarded += 1
            if discarded > max(20, n_episodes):
                raise RuntimeError("expert discard rate is implausibly high")
            continue
        episodes.append(ep)
    return episodes, discarded


def gen_human_episode(rng: np.random.Generator, target_category: str, max_steps: int = 120) -> Episode | None:
    """An egocentric-only demonstration: head view valid, hand state/actions only.

    The scene mixes the target with distractors from the held-out categories,
    all within arm reach so no base motion is demonstrated.
    """
    seed = int(rng.integers(2**31 - 1))
    srng = np.random.default_rng(seed)
    distractors = [c for c in UNSEEN_CATEGORIES if c != target_category]
    cats = [target_category] + [str(c) for c in srng.choice(distractors, size=4, replace=False)]
    order = srng.permutation(len(cats))
    cats = [cats[i] for i in order]
    bg = int(srng.choice(SEEN_BACKGROUNDS))
    scene = build_scene(srng, cats, bg, seed=seed)
    target = next(o for o in scene.objects if o.category == target_category)
    container = scene.containers[int(srng.integers(len(scene.containers)))].name
    text = f"put the {target_category} into the {container}"
    meta = {"target_oid": target.oid, "container": container, "split": "human"}
    sim = TabletopSim(scene, human=True)
    steps, ok = run_expert_episode(sim, target.oid, container, max_steps=max_steps)
    if not ok:
        return None
    return _pack_episode(steps, Instruction(text, meta=meta), scene, "human", seed)


def generate_human_dataset(shots: int, seed: int, max_steps: int = 120) -> tuple[list[Episode], int]:
    """`shots` demonstrations per held-out category."""
    rng = np.random.default_rng(seed)
    episodes: list[Episode] = []
    discarded = 0
    for cat in UNSEEN_CATEGORIES:
        kept = 0
        while kept < shots:
            ep = gen_human_episode(rng, cat, max_steps=max_steps)
            if ep is None:
                discarded += 1
                if discarded > 10 * shots * len(UNSEEN_CATEGORIES) + 20:
                    raise RuntimeError("expert discard rate is implausibly high")
                continue
            episodes.append(ep)
            kept += 1
    return episodes, discarded
