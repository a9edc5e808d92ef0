"""Z-score normalization for actions and states; the status column passes through."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .types import ActionChunk, D_ACTION, D_STATE, Episode, STATUS_COL


@dataclass
class Normalizer:
    """Per-dimension statistics for actions and states.

    Dimensions with zero variance get std forced to 1, and the action status
    column is always the identity transform.
    """

    action_mean: np.ndarray
    action_std: np.ndarray
    state_mean: np.ndarray
    state_std: np.ndarray
    clip: float = 5.0

    def __post_init__(self):
        for name in ("action_mean", "action_std", "state_mean", "state_std"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=np.float32))
        if np.any(self.action_std <= 0) or np.any(self.state_std <= 0):
            raise ValueError("normalizer std must be positive on every dimension")

    def to_arrays(self) -> dict[str, np.ndarray]:
        return {
            "action_mean": self.action_mean,
            "action_std": self.action_std,
            "state_mean": self.state_mean,
            "state_std": self.state_std,
            "clip": np.array([self.clip], dtype=np.float32),
        }

    @classmethod
    def from_arrays(cls, arrays: dict[str, np.ndarray]) -> "Normalizer":
        return cls(
            action_mean=arrays["action_mean"],
            action_std=arrays["action_std"],
            state_mean=arrays["state_mean"],
            state_std=arrays["state_std"],
            clip=float(np.asarray(arrays["clip"]).reshape(-1)[0]),
        )


def _fit_dims(rows: np.ndarray, what: str) -> tuple[np.ndarray, np.ndarray]:
    mean = rows.mean(axis=0)
    std = rows.std(axis=0)  # population std
    flat = std <= 1e-12
    if np.any(flat):
        warnings.warn(f"{what}: zero-variance dims {np.where(flat)[0].tolist()}, std forced to 1")
        std = np.where(flat, 1.0, std)
    return mean.astype(np.float32), std.astype(np.float32)


def fit_normalizer(episodes: list[Episode], clip: float = 5.0) -> Normalizer:
    """Fit statistics over robot-embodiment rows only; never over the status column."""
    robot = [ep for ep in episodes if ep.embodiment == "robot"]
    if not robot:
        raise ValueError("fit_normalizer needs a non-empty dataset with robot episodes")
    actions = np.concatenate([ep.actions for ep in robot], axis=0)
    states = np.concatenate([ep.states for ep in robot], axis=0)
    a_mean, a_std = _fit_dims(actions, "actions")
    s_mean, s_std = _fit_dims(states, "states")
    # Status column is identity.
    a_mean[STATUS_COL] = 0.0
    a_std[STATUS_COL] = 1.0
    return Normalizer(a_mean, a_std, s_mean, s_std, clip=clip)


def normalize_chunk(chunk: ActionChunk, n: Normalizer) -> ActionChunk:
    """Map motion dims to clipped z-scores; leave the status dim untouched."""
    if chunk.d != n.action_mean.shape[0]:
        raise ValueError(f"chunk dim {chunk.d} does not match normalizer {n.action_mean.shape[0]}")
    out = (chunk.values - n.action_mean) / n.action_std
    out = np.clip(out, -n.clip, n.clip)
    out[:, STATUS_COL] = chunk.values[:, STATUS_COL]
    return ActionChunk(values=out, chunk_start=chunk.chunk_start)


def denormalize_chunk(chunk: ActionChunk, n: Normalizer) -> ActionChunk:
    if chunk.d != n.action_mean.shape[0]:
        raise ValueError(f"chunk dim {chunk.d} does not match normalizer {n.action_mean.shape[0]}")
    out = chunk.values * n.action_std + n.action_mean
    out[:, STATUS_COL] = chunk.values[:, STATUS_COL]
    return ActionChunk(values=out, chunk_start=chunk.chunk_start)


def normalize_actions(values: np.ndarray, n: Normalizer) -> np.ndarray:
    """Array form of normalize_chunk for (..., d) action rows."""
    if values.shape[-1] != n.action_mean.shape[0]:
        raise ValueError("action dim mismatch")
    out = (values - n.action_mean) / n.action_std
    out = np.clip(out, -n.clip, n.clip)
    out[..., STATUS_COL] = values[..., STATUS_COL]
    return out.astype(np.float32)


def normalize_state(vector: np.ndarray, n: Normalizer) -> np.ndarray:
    if vector.shape[-1] != n.state_mean.shape[0]:
        raise ValueError("state dim mismatch")
    out = (vector - n.state_mean) / n.state_std
    return np.clip(out, -n.clip, n.clip).astype(np.float32)
