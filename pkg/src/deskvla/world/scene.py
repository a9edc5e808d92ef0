"""Scene construction and the balanced data-collection scheduler."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry as geo
from .taxonomy import (
    CATEGORIES,
    CONTAINER_NAMES,
    SEEN_BACKGROUNDS,
    SEEN_CATEGORIES,
    SIZE_NAMES,
    SIZES,
    UNSEEN_BACKGROUNDS,
    UNSEEN_CATEGORIES,
)


@dataclass
class ObjectSpec:
    oid: int
    category: str
    size: str  # small | medium | large
    x: float
    y: float

    @property
    def radius(self) -> float:
        return SIZES[self.size]

    @property
    def family(self) -> str:
        return CATEGORIES[self.category].family

    @property
    def color(self) -> tuple[float, float, float]:
        return CATEGORIES[self.category].color

    @property
    def shape(self) -> str:
        return CATEGORIES[self.category].shape


@dataclass
class Container:
    name: str
    x: float
    y: float
    half: float = geo.CONTAINER_HALF

    def contains(self, x: float, y: float) -> bool:
        return abs(x - self.x) <= self.half and abs(y - self.y) <= self.half


@dataclass
class SceneConfig:
    objects: list[ObjectSpec]
    containers: list[Container]
    background: int
    seed: int = 0

    def validate(self) -> None:
        if not self.containers:
            raise ValueError("scene needs at least one container")
        for o in self.objects:
            if not (geo.MARGIN <= o.x <= geo.TABLE - geo.MARGIN and geo.MARGIN <= o.y <= geo.TABLE - geo.MARGIN):
                raise ValueError(f"object {o.oid} outside table bounds")
            if o.size not in SIZES:
                raise ValueError(f"object {o.oid} has unknown size {o.size!r}")
        for a in self.objects:
            for b in self.objects:
                if a.oid < b.oid:
                    gap = math.hypot(a.x - b.x, a.y - b.y) - a.radius - b.radius
                    if gap < -geo.OVERLAP_TOL:
                        raise ValueError(f"objects {a.oid} and {b.oid} overlap")

    def object_by_id(self, oid: int) -> ObjectSpec:
        for o in self.objects:
            if o.oid == oid:
                return o
        raise KeyError(oid)

    def container_by_name(self, name: str) -> Container | None:
        for c in self.containers:
            if c.name == name:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "objects": [
                {"oid": o.oid, "category": o.category, "size": o.size, "x": o.x, "y": o.y}
                for o in self.objects
            ],
            "containers": [{"name": c.name, "x": c.x, "y": c.y, "half": c.half} for c in self.containers],
            "background": self.background,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SceneConfig":
        return cls(
            objects=[ObjectSpec(**o) for o in d["objects"]],
            containers=[Container(**c) for c in d["containers"]],
            background=d["background"],
            seed=d.get("seed", 0),
        )


def _dist_from_base(x: float, y: float) -> float:
    return math.hypot(x - geo.BASE_START[0], y - geo.BASE_START[1])


def _sample_positions(
    rng: np.random.Generator,
    radii: list[float],
    containers: list[Container],
    max_base_dist: float,
) -> list[tuple[float, float]]:
    eff0 = (geo.BASE_START[0] + geo.EFFECTOR_OFFSET[0], geo.BASE_START[1] + geo.EFFECTOR_OFFSET[1])
    placed: list[tuple[float, float, float]] = []
    for r in radii:
        for _ in range(400):
            x = rng.uniform(geo.MARGIN, geo.TABLE - geo.MARGIN)
            y = rng.uniform(geo.MARGIN, geo.TABLE - geo.MARGIN)
            if _dist_from_base(x, y) > max_base_dist:
                continue
            # First-approach attribution needs objects clear of the start pose.
            if math.hypot(x - eff0[0], y - eff0[1]) < geo.R_GRASP + 1.0:
                continue
            if any(math.hypot(x - cx, y - cy) < rr + r + geo.OVERLAP_TOL for cx, cy, rr in placed):
                continue
            if any(math.hypot(x - c.x, y - c.y) < c.half + r + geo.OVERLAP_TOL for c in containers):
                continue
            placed.append((x, y, r))
            break
        else:
            raise RuntimeError("could not place object without overlap")
    return [(x, y) for x, y, _ in placed]


# Container slots: the first group is reachable from the start pose, the last
# requires driving the base up-table.
_NEAR_SLOTS = ((2.6, 6.0), (9.4, 6.0), (3.2, 2.8), (8.8, 2.8))
_FAR_SLOTS = ((4.2, 10.6), (7.8, 10.6))
_SHIFTED_SLOTS = ((2.6, 3.8), (9.4, 8.2), (6.0, 7.6), (8.8, 4.6))  # unseen-environment layout


def _sample_containers(rng: np.random.Generator, far_target: bool, shifted: bool = False) -> list[Container]:
    names = [str(n) for n in rng.choice(CONTAINER_NAMES, size=2, replace=False)]
    slots = _SHIFTED_SLOTS if shifted else _NEAR_SLOTS
    picks = rng.choice(len(slots), size=2, replace=False)
    containers = [Container(n, *slots[i]) for n, i in zip(names, picks)]
    if far_target:
        far = _FAR_SLOTS[int(rng.integers(len(_FAR_SLOTS)))]
        containers[0] = Container(names[0], *far)
    return containers


def build_scene(
    rng: np.random.Generator,
    categories: list[str],
    background: int,
    sizes: list[str] | None = None,
    far_target: bool = False,
    shifted_containers: bool = False,
    seed: int = 0,
) -> SceneConfig:
    """Place the given categories and two containers without overlaps."""
    if sizes is None:
        sizes = [SIZE_NAMES[int(rng.integers(len(SIZE_NAMES)))] for _ in categories]
    containers = _sample_containers(rng, far_target, shifted_containers)
    radii = [SIZES[s] for s in sizes]
    positions = _sample_positions(rng, radii, containers, max_base_dist=geo.REACH - 0.6)
    objects = [
        ObjectSpec(oid=i, category=c, size=s, x=round(p[0], 4), y=round(p[1], 4))
        for i, (c, s, p) in enumerate(zip(categories, sizes, positions))
    ]
    scene = SceneConfig(objects=objects, containers=containers, background=background, seed=seed)
    scene.validate()
    return scene


def _combo_pool(seed: int, n_combos: int = 12, combo_size: int = 5) -> list[tuple[str, ...]]:
    """Fixed pool of seen-category subsets; built from permutations so every
    category is covered and no combo repeats a category."""
    rng = np.random.default_rng(seed)
    combos: list[tuple[str, ...]] = []
    while len(combos) < n_combos:
        perm = list(rng.permutation(SEEN_CATEGORIES))
        for i in range(0, len(perm) - combo_size + 1, combo_size):
            combos.append(tuple(perm[i : i + combo_size]))
            if len(combos) == n_combos:
                break
    return combos


@dataclass
class SchedulerState:
    """Balanced sweep over (target action, object combination, background) cells."""

    seed: int
    p_far: float = 0.1
    combos: list[tuple[str, ...]] = field(default_factory=list)
    counts: dict[tuple[int, int, int], int] = field(default_factory=dict)
    rng: np.random.Generator = None

    def __post_init__(self):
        if self.rng is None:
            self.rng = np.random.default_rng(self.seed)
        if not self.combos:
            self.combos = _combo_pool(self.seed ^ 0x5EED)
        if not self.counts:
            self.counts = {
                (ci, ti, bg): 0
                for ci in range(len(self.combos))
                for ti in range(len(self.combos[ci]))
                for bg in SEEN_BACKGROUNDS
            }

    def n_cells(self) -> int:
        return len(self.counts)


def schedule_next(state: SchedulerState) -> tuple[SceneConfig, str, dict]:
    """Pick the least-visited (target, combination, background) cell, ties by rng."""
    lowest = min(state.counts.values())
    cells = sorted(c for c, n in state.counts.items() if n == lowest)
    cell = cells[int(state.rng.integers(len(cells)))]
    state.counts[cell] += 1
    ci, ti, bg = cell
    combo = state.combos[ci]
    far = bool(state.rng.random() < state.p_far)
    scene_seed = int(state.rng.integers(2**31 - 1))
    scene = build_scene(
        np.random.default_rng(scene_seed), list(combo), bg, far_target=far, seed=scene_seed
    )
    target = scene.objects[ti]
    container = scene.containers[0].name
    text = f"put the {target.category} into the {container}"
    meta = {"target_oid": target.oid, "container": container, "split": "seen", "cell": list(cell)}
    return scene, text, meta


def sample_eval_scene(
    rng: np.random.Generator, setting: str, n_objects: int = 5
) -> tuple[SceneConfig, str, dict]:
    """Scene + instruction for one evaluation rollout of the given setting."""
    from .language import make_invalid_instruction, make_unseen_instruction

    seed = int(rng.integers(2**31 - 1))
    srng = np.random.default_rng(seed)
    bg = int(srng.choice(SEEN_BACKGROUNDS))

    if setting in ("basic", "invalid_tasks"):
        cats = [str(c) for c in srng.choice(SEEN_CATEGORIES, size=n_objects, replace=False)]
        scene = build_scene(srng, cats, bg, seed=seed)
    elif setting == "unseen_env":
        cats = [str(c) for c in srng.choice(SEEN_CATEGORIES, size=n_objects, replace=False)]
        bg = int(srng.choice(UNSEEN_BACKGROUNDS))
        scene = build_scene(srng, cats, bg, shifted_containers=True, seed=seed)
    elif setting == "unseen_object":
        cats = [str(c) for c in srng.choice(UNSEEN_CATEGORIES, size=n_objects, replace=False)]
        scene = build_scene(srng, cats, bg, seed=seed)
    elif setting == "unseen_instruction":
        return make_unseen_instruction(srng, bg, seed)
    else:
        raise ValueError(f"unknown setting {setting!r}")

    container = scene.containers[int(srng.integers(len(scene.containers)))].name
    if setting == "invalid_tasks":
        text, meta = make_invalid_instruction(srng, scene, container)
    else:
        target = scene.objects[int(srng.integers(len(scene.objects)))]
        text = f"put the {target.category} into the {container}"
        meta = {"target_oid": target.oid, "container": container, "split": setting}
    return scene, text, meta
