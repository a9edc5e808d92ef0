"""Kinematic tabletop simulator and its rasterizer.

The world is a flat table: a single controlled effector (clamped to a reach
disk around a unicycle base), a binary gripper, point objects with glyph
renders, and rectangular container regions. One 96x96 canvas is rasterized per
step; the head view is a 3x downsample and wrist views are 2x-downsampled
crops around each effector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..types import D_ACTION, D_STATE, Observation, RobotState, STATE_VALID_HUMAN
from . import geometry as geo
from .scene import SceneConfig
from .taxonomy import BACKGROUNDS, CATEGORIES, CONTAINERS

VIEW_HW = 32
_HEAD_POOL = geo.CANVAS_PX // VIEW_HW  # 3
_WRIST_CROP = int(geo.WRIST_SPAN * geo.PX_PER_UNIT)  # 64
_WRIST_POOL = _WRIST_CROP // VIEW_HW  # 2

_EFF_OPEN = (1.0, 1.0, 1.0)
_EFF_CLOSED = (1.0, 0.15, 0.8)
_BASE_COLOR = (0.06, 0.06, 0.09)
_RIGHT_COLOR = (0.65, 0.65, 0.65)

_glyph_cache: dict[tuple[str, int], np.ndarray] = {}


def _glyph(shape: str, r_px: int) -> np.ndarray:
    key = (shape, r_px)
    if key not in _glyph_cache:
        n = 2 * r_px + 1
        yy, xx = np.mgrid[-r_px : r_px + 1, -r_px : r_px + 1]
        if shape == "circle":
            m = xx * xx + yy * yy <= r_px * r_px
        elif shape == "square":
            s = max(1, int(0.8 * r_px))
            m = (np.abs(xx) <= s) & (np.abs(yy) <= s)
        elif shape == "triangle":
            m = (yy >= -r_px) & (np.abs(xx) <= (yy + r_px) * 0.6) & (yy <= r_px)
        elif shape == "diamond":
            m = np.abs(xx) + np.abs(yy) <= r_px
        else:
            raise ValueError(f"unknown shape {shape!r}")
        _glyph_cache[key] = m.reshape(n, n)
    return _glyph_cache[key]


def _stamp(canvas: np.ndarray, row: int, col: int, mask: np.ndarray, color) -> None:
    r = mask.shape[0] // 2
    n = geo.CANVAS_PX
    r0, r1 = max(0, row - r), min(n, row + r + 1)
    c0, c1 = max(0, col - r), min(n, col + r + 1)
    if r0 >= r1 or c0 >= c1:
        return
    sub = mask[r0 - (row - r) : r1 - (row - r), c0 - (col - r) : c1 - (col - r)]
    canvas[r0:r1, c0:c1][sub] = color


def _to_px(x: float, y: float) -> tuple[int, int]:
    col = int(round(x * geo.PX_PER_UNIT))
    row = int(round((geo.TABLE - y) * geo.PX_PER_UNIT))
    return row, col


def _pool(img: np.ndarray, f: int) -> np.ndarray:
    h, w, _ = img.shape
    return img.reshape(h // f, f, w // f, f, 3).mean(axis=(1, 3))


def render_canvas(
    scene: SceneConfig,
    obj_xy: np.ndarray,
    eff: tuple[float, float] | None = None,
    grip_closed: bool = False,
    base: tuple[float, float, float] | None = None,
    right_eff: tuple[float, float] | None = None,
) -> np.ndarray:
    """Rasterize the world at canvas resolution; robot markers are optional."""
    canvas = np.empty((geo.CANVAS_PX, geo.CANVAS_PX, 3), dtype=np.float32)
    canvas[:] = BACKGROUNDS[scene.background]
    for c in scene.containers:
        color = np.array(CONTAINERS[c.name], dtype=np.float32)
        r0, c0 = _to_px(c.x - c.half, c.y + c.half)
        r1, c1 = _to_px(c.x + c.half, c.y - c.half)
        r0, c0 = max(0, r0), max(0, c0)
        canvas[r0:r1, c0:c1] = color * 0.55
        canvas[r0:r1, c0:c1][1:-1, 1:-1] = color * 0.9
    for i, o in enumerate(scene.objects):
        cat = CATEGORIES[o.category]
        r_px = max(2, int(round(o.radius * geo.PX_PER_UNIT)))
        row, col = _to_px(obj_xy[i, 0], obj_xy[i, 1])
        _stamp(canvas, row, col, _glyph(cat.shape, r_px), cat.color)
    if base is not None:
        row, col = _to_px(base[0], base[1])
        _stamp(canvas, row, col, _glyph("square", 5), _BASE_COLOR)
        nose_r = row - int(round(4 * math.sin(base[2])))
        nose_c = col + int(round(4 * math.cos(base[2])))
        _stamp(canvas, nose_r, nose_c, _glyph("square", 1), (0.9, 0.9, 0.9))
    if right_eff is not None:
        row, col = _to_px(*right_eff)
        _stamp(canvas, row, col, _glyph("diamond", 2), _RIGHT_COLOR)
    if eff is not None:
        row, col = _to_px(*eff)
        color = _EFF_CLOSED if grip_closed else _EFF_OPEN
        canvas[max(0, row - 3) : row + 4, max(0, col - 1) : col + 2] = color
        canvas[max(0, row - 1) : row + 2, max(0, col - 3) : col + 4] = color
    return canvas


def _wrist_view(canvas: np.ndarray, x: float, y: float) -> np.ndarray:
    row, col = _to_px(x, y)
    half = _WRIST_CROP // 2
    r0 = min(max(0, row - half), geo.CANVAS_PX - _WRIST_CROP)
    c0 = min(max(0, col - half), geo.CANVAS_PX - _WRIST_CROP)
    return _pool(canvas[r0 : r0 + _WRIST_CROP, c0 : c0 + _WRIST_CROP], _WRIST_POOL)


def render_scene_head(scene: SceneConfig, obj_xy: np.ndarray | None = None) -> np.ndarray:
    """Bare head view of a scene with no robot markers (vision-language images)."""
    if obj_xy is None:
        obj_xy = np.array([[o.x, o.y] for o in scene.objects], dtype=np.float64)
    return _pool(render_canvas(scene, obj_xy), _HEAD_POOL).astype(np.float32)


@dataclass
class SimEvent:
    kind: str  # approach | grasp | release | placed
    oid: int
    container: str | None = None
    t: int = 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "oid": self.oid, "container": self.container, "t": self.t}


@dataclass
class TabletopSim:
    scene: SceneConfig
    human: bool = False
    obj_xy: np.ndarray = None
    eff: np.ndarray = None
    base: np.ndarray = None  # x, y, heading
    grip_closed: bool = False
    grasped: int | None = None
    t: int = 0
    approached: list[int] = field(default_factory=list)
    placed: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.obj_xy is None:
            self.obj_xy = np.array([[o.x, o.y] for o in self.scene.objects], dtype=np.float64)
            self.base = np.array([*geo.BASE_START, geo.BASE_HEADING_START], dtype=np.float64)
            self.eff = self.base[:2] + np.array(geo.EFFECTOR_OFFSET)

    def copy(self) -> "TabletopSim":
        twin = TabletopSim(
            scene=self.scene,
            human=self.human,
            obj_xy=self.obj_xy.copy(),
            eff=self.eff.copy(),
            base=self.base.copy(),
            grip_closed=self.grip_closed,
            grasped=self.grasped,
            t=self.t,
            approached=list(self.approached),
            placed=dict(self.placed),
        )
        return twin

    def _right_eff(self) -> tuple[float, float]:
        c, s = math.cos(self.base[2]), math.sin(self.base[2])
        ox, oy = geo.RIGHT_ARM_OFFSET
        return (self.base[0] + c * oy + s * ox, self.base[1] + s * oy - c * ox)

    def observe(self) -> Observation:
        canvas = render_canvas(
            self.scene,
            self.obj_xy,
            eff=tuple(self.eff),
            grip_closed=self.grip_closed,
            base=None if self.human else tuple(self.base),
            right_eff=None if self.human else self._right_eff(),
        )
        head = _pool(canvas, _HEAD_POOL)
        if self.human:
            return Observation.head_only(head.astype(np.float32))
        left = _wrist_view(canvas, *self.eff)
        right = _wrist_view(canvas, *self._right_eff())
        views = np.stack([head, left, right]).astype(np.float32)
        return Observation(views=views, view_valid=np.array([True, True, True]))

    def state(self) -> RobotState:
        rx, ry = self._right_eff()
        theta = math.remainder(self.base[2], 2 * math.pi)
        vec = np.array(
            [
                self.eff[0], self.eff[1], 1.0 if self.grip_closed else 0.0,
                rx, ry, 0.0,
                self.base[0], self.base[1], theta,
            ],
            dtype=np.float32,
        )
        if self.human:
            vec = np.where(STATE_VALID_HUMAN, vec, 0.0).astype(np.float32)
            return RobotState(vector=vec, valid_mask=STATE_VALID_HUMAN.copy())
        return RobotState(vector=vec, valid_mask=np.ones(D_STATE, dtype=bool))

    def reset(self) -> tuple[Observation, RobotState]:
        return self.observe(), self.state()

    def step(self, action: np.ndarray) -> tuple[Observation, RobotState, list[SimEvent]]:
        action = np.asarray(action, dtype=np.float64)
        if action.shape[0] < D_ACTION - 1 or not np.all(np.isfinite(action)):
            raise ValueError("action must be a finite vector with the motion dims")
        events: list[SimEvent] = []

        v = float(np.clip(action[3], -geo.V_BASE_MAX, geo.V_BASE_MAX))
        w = float(np.clip(action[4], -geo.W_BASE_MAX, geo.W_BASE_MAX))
        self.base[0] += v * math.cos(self.base[2]) * geo.DT
        self.base[1] += v * math.sin(self.base[2]) * geo.DT
        self.base[0] = np.clip(self.base[0], 0.5, geo.TABLE - 0.5)
        self.base[1] = np.clip(self.base[1], 0.5, geo.TABLE - 0.5)
        self.base[2] += w * geo.DT

        dxy = np.clip(action[:2], -geo.V_EFF_MAX, geo.V_EFF_MAX)
        self.eff = self.eff + dxy * geo.DT
        arm = self.eff - self.base[:2]
        dist = float(np.hypot(*arm))
        if dist > geo.REACH:
            self.eff = self.base[:2] + arm * (geo.REACH / dist)
        self.eff = np.clip(self.eff, 0.2, geo.TABLE - 0.2)

        want_closed = bool(action[2] > 0.5)
        if want_closed and not self.grip_closed:
            dists = np.hypot(*(self.obj_xy - self.eff).T)
            near = int(np.argmin(dists))
            if dists[near] <= geo.R_GRASP:
                self.grasped = near
                events.append(SimEvent("grasp", near, t=self.t))
        elif not want_closed and self.grip_closed and self.grasped is not None:
            oid = self.grasped
            events.append(SimEvent("release", oid, t=self.t))
            for c in self.scene.containers:
                if c.contains(*self.obj_xy[oid]):
                    self.placed[oid] = c.name
                    events.append(SimEvent("placed", oid, container=c.name, t=self.t))
                    break
            self.grasped = None
        self.grip_closed = want_closed
        if self.grasped is not None:
            self.obj_xy[self.grasped] = self.eff

        dists = np.hypot(*(self.obj_xy - self.eff).T)
        for oid in np.where(dists <= geo.R_GRASP)[0]:
            if int(oid) not in self.approached:
                self.approached.append(int(oid))
                events.append(SimEvent("approach", int(oid), t=self.t))

        self.t += 1
        return self.observe(), self.state(), events
