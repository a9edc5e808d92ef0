"""Instruction templates and the deterministic semantic resolver.

The resolver is the simulator-side oracle: it maps an instruction to the object
it denotes (or INVALID when nothing satisfies the description) and is used for
expert targets, invalid-instruction augmentation, and evaluation metrics.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .scene import SceneConfig, build_scene
from .taxonomy import CATEGORIES, FAMILIES, SEEN_CATEGORIES, SIZE_NAMES

_PUT_RE = re.compile(r"^put the (.+) into the ([a-z]+)$")

# Descriptor families that never appear in robot-trajectory annotations.
UNSEEN_TEMPLATE_KINDS = ("hypernym", "superlative", "spatial")


class UnknownTemplateError(ValueError):
    pass


def parse_instruction(text: str) -> tuple[str, str]:
    m = _PUT_RE.match(text.strip())
    if not m:
        raise UnknownTemplateError(f"unrecognized instruction template: {text!r}")
    return m.group(1), m.group(2)


def _dist(a, b) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def _lowest(objs):
    return min(objs, key=lambda o: o.oid)


def resolve_descriptor(scene: SceneConfig, desc: str) -> int | None:
    """Resolve a descriptor to an object id; None means no object satisfies it."""
    if desc in ("largest object", "smallest object"):
        if not scene.objects:
            return None
        key = (lambda o: (-o.radius, o.oid)) if desc.startswith("largest") else (lambda o: (o.radius, o.oid))
        return sorted(scene.objects, key=key)[0].oid
    if " next to the " in desc:
        left, right = desc.split(" next to the ", 1)
        if left not in CATEGORIES or right not in CATEGORIES:
            raise UnknownTemplateError(f"unknown categories in descriptor {desc!r}")
        anchors = [o for o in scene.objects if o.category == right]
        cands = [o for o in scene.objects if o.category == left]
        if not anchors or not cands:
            return None
        anchor = _lowest(anchors)
        cands = [o for o in cands if o.oid != anchor.oid]
        if not cands:
            return None
        return min(cands, key=lambda o: (round(_dist(o, anchor), 9), o.oid)).oid
    if desc in FAMILIES:
        matches = [o for o in scene.objects if o.family == desc]
        return _lowest(matches).oid if matches else None
    if desc in CATEGORIES:
        matches = [o for o in scene.objects if o.category == desc]
        return _lowest(matches).oid if matches else None
    raise UnknownTemplateError(f"unknown descriptor {desc!r}")


def resolve_instruction(scene: SceneConfig, text: str) -> int | None:
    """Target object id for a put-into instruction, or None if the task is invalid."""
    desc, container = parse_instruction(text)
    if scene.container_by_name(container) is None:
        return None
    return resolve_descriptor(scene, desc)


def make_invalid_instruction(
    rng: np.random.Generator, scene: SceneConfig, container: str | None = None
) -> tuple[str, dict]:
    """An instruction naming a seen category that is absent from the scene."""
    present = {o.category for o in scene.objects}
    absent = [c for c in SEEN_CATEGORIES if c not in present]
    if not absent:
        raise RuntimeError("no absent category available for an invalid instruction")
    cat = absent[int(rng.integers(len(absent)))]
    if container is None:
        container = scene.containers[int(rng.integers(len(scene.containers)))].name
    text = f"put the {cat} into the {container}"
    assert resolve_instruction(scene, text) is None
    return text, {"target_oid": None, "container": container, "split": "invalid"}


def make_unseen_instruction(
    rng: np.random.Generator, background: int, seed: int
) -> tuple[SceneConfig, str, dict]:
    """Scene plus an instruction from a held-out template family.

    All objects come from seen categories; the novelty is the descriptor:
    hypernym, size superlative, or spatial relation.
    """
    kind = UNSEEN_TEMPLATE_KINDS[int(rng.integers(len(UNSEEN_TEMPLATE_KINDS)))]
    sizes = None
    if kind == "hypernym":
        family = FAMILIES[int(rng.integers(len(FAMILIES)))]
        members = [c for c in SEEN_CATEGORIES if CATEGORIES[c].family == family]
        others = [c for c in SEEN_CATEGORIES if CATEGORIES[c].family != family]
        cats = [members[int(rng.integers(len(members)))]] + [
            str(c) for c in rng.choice(others, size=4, replace=False)
        ]
        desc = family
    elif kind == "superlative":
        cats = [str(c) for c in rng.choice(SEEN_CATEGORIES, size=5, replace=False)]
        if rng.random() < 0.5:
            desc = "largest object"
            sizes = ["large"] + [("small", "medium")[int(rng.integers(2))] for _ in range(4)]
        else:
            desc = "smallest object"
            sizes = ["small"] + [("medium", "large")[int(rng.integers(2))] for _ in range(4)]
    else:
        picks = [str(c) for c in rng.choice(SEEN_CATEGORIES, size=4, replace=False)]
        dup, anchor = picks[0], picks[1]
        cats = [dup, dup, anchor] + picks[2:]
        desc = f"{dup} next to the {anchor}"
    order = rng.permutation(len(cats))
    cats = [cats[i] for i in order]
    if sizes is not None:
        sizes = [sizes[i] for i in order]
    scene = build_scene(rng, cats, background, sizes=sizes, seed=seed)
    container = scene.containers[int(rng.integers(len(scene.containers)))].name
    text = f"put the {desc} into the {container}"
    target = resolve_instruction(scene, text)
    assert target is not None
    meta = {
        "target_oid": target,
        "container": container,
        "split": "unseen-instruction",
        "kind": kind,
    }
    return scene, text, meta
