"""Shared domain types: instructions, observations, states, action chunks, episodes."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

# Action layout of the toy world: effector vx, vy; gripper command; base forward
# velocity; base angular velocity; and one trailing task-status dimension.
D_MOTION = 5
D_ACTION = D_MOTION + 1
STATUS_COL = D_ACTION - 1
EFFECTOR_DIMS = (0, 1)
GRIPPER_DIM = 2
BASE_DIMS = (3, 4)

# State layout: left effector x, y, gripper openness; right effector x, y,
# gripper openness; base x, y, heading.
D_STATE = 9
STATE_VALID_HUMAN = np.array(
    [True, True, False, False, False, False, False, False, False]
)

DEFAULT_CHUNK = 8
N_VIEWS = 3
IMAGE_HW = 32


class TaskStatus(IntEnum):
    ONGOING = 0
    TERMINATED = 1
    INVALID = -1


@dataclass
class Instruction:
    """A natural-language command, optionally tokenized.

    ``meta`` carries simulator-side ground truth (target object id, container
    name) and is never shown to the model.
    """

    text: str
    token_ids: np.ndarray | None = None
    meta: dict | None = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("instruction text must be non-empty")


@dataclass
class Observation:
    """Three camera views (head, left wrist, right wrist), each HxWx3 in [0,1]."""

    views: np.ndarray  # (3, H, W, 3) float32
    view_valid: np.ndarray  # (3,) bool; padded blank views are marked False

    def __post_init__(self):
        self.views = np.asarray(self.views, dtype=np.float32)
        self.view_valid = np.asarray(self.view_valid, dtype=bool)
        if self.views.ndim != 4 or self.views.shape[0] != N_VIEWS or self.views.shape[-1] != 3:
            raise ValueError(f"views must be ({N_VIEWS}, H, W, 3), got {self.views.shape}")
        if self.view_valid.shape != (N_VIEWS,):
            raise ValueError("view_valid must have one flag per view")

    @classmethod
    def head_only(cls, head: np.ndarray) -> "Observation":
        """Pad blank wrist views around a lone head image."""
        views = np.zeros((N_VIEWS,) + head.shape, dtype=np.float32)
        views[0] = head
        return cls(views=views, view_valid=np.array([True, False, False]))


@dataclass
class RobotState:
    vector: np.ndarray  # (D_STATE,) float32
    valid_mask: np.ndarray  # (D_STATE,) bool

    def __post_init__(self):
        self.vector = np.asarray(self.vector, dtype=np.float32)
        self.valid_mask = np.asarray(self.valid_mask, dtype=bool)
        if self.vector.shape != (D_STATE,) or self.valid_mask.shape != (D_STATE,):
            raise ValueError("state vector and valid_mask must both be (D_STATE,)")
        if not np.all(np.isfinite(self.vector)):
            raise ValueError("state vector must be finite")


@dataclass
class ActionChunk:
    """A k x d block of actions; the final column is the task-status dimension."""

    values: np.ndarray  # (k, d) float32
    chunk_start: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float32)
        if self.values.ndim != 2:
            raise ValueError("chunk values must be 2-D (k, d)")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("chunk values must be finite")

    @property
    def k(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    @property
    def status(self) -> np.ndarray:
        return self.values[:, STATUS_COL]


@dataclass
class Episode:
    """One demonstration, stored as struct-of-arrays for compactness.

    ``images`` is (T, n_views, H, W, 3) float32; ``view_valid`` is shared by all
    steps of the episode. ``actions`` rows already include the status column.
    """

    instruction: Instruction
    images: np.ndarray  # (T, 3, H, W, 3) float32
    states: np.ndarray  # (T, D_STATE) float32
    actions: np.ndarray  # (T, D_ACTION) float32
    view_valid: np.ndarray  # (3,) bool
    state_valid: np.ndarray  # (D_STATE,) bool
    embodiment: str  # "robot" | "human"
    scene: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        self.images = np.asarray(self.images, dtype=np.float32)
        self.states = np.asarray(self.states, dtype=np.float32)
        self.actions = np.asarray(self.actions, dtype=np.float32)
        self.view_valid = np.asarray(self.view_valid, dtype=bool)
        self.state_valid = np.asarray(self.state_valid, dtype=bool)
        if len(self) < 1:
            raise ValueError("episode must contain at least one step")
        if not (len(self.images) == len(self.states) == len(self.actions)):
            raise ValueError("images, states, actions must share the step count")
        if self.embodiment not in ("robot", "human"):
            raise ValueError(f"unknown embodiment {self.embodiment!r}")

    def __len__(self) -> int:
        return self.actions.shape[0]

    def step(self, t: int) -> tuple[Observation, RobotState, np.ndarray]:
        obs = Observation(views=self.images[t], view_valid=self.view_valid.copy())
        state = RobotState(vector=self.states[t], valid_mask=self.state_valid.copy())
        return obs, state, self.actions[t]


@dataclass
class VLSample:
    """A vision-language training example: one image, a prompt, and target tokens."""

    image: np.ndarray  # (H, W, 3) float32
    prompt_ids: np.ndarray  # (P,) int64
    target_ids: np.ndarray  # (T,) int64
    task: str  # "caption" | "grounding" | "qa"

    def __post_init__(self):
        self.prompt_ids = np.asarray(self.prompt_ids, dtype=np.int64)
        self.target_ids = np.asarray(self.target_ids, dtype=np.int64)
        if self.target_ids.size == 0:
            raise ValueError("vision-language sample needs a non-empty target")


def episodes_equal(a: Episode, b: Episode) -> bool:
    """Exact element-wise equality, used by round-trip tests."""
    return (
        a.instruction.text == b.instruction.text
        and a.instruction.meta == b.instruction.meta
        and a.embodiment == b.embodiment
        and a.seed == b.seed
        and a.scene == b.scene
        and np.array_equal(a.images, b.images)
        and np.array_equal(a.states, b.states)
        and np.array_equal(a.actions, b.actions)
        and np.array_equal(a.view_valid, b.view_valid)
        and np.array_equal(a.state_valid, b.state_valid)
    )
