"""Synthetic vision-language samples: captioning, grounding, and QA.

Hypernym, superlative, and spatial vocabulary lives only in these generators,
never in robot-episode instructions; that separation is what the co-training
experiments measure.
"""

from __future__ import annotations

import numpy as np

from ..tokenizer import Tokenizer
from ..types import VLSample
from . import geometry as geo
from .language import resolve_descriptor
from .scene import SceneConfig, build_scene
from .sim import render_scene_head
from .taxonomy import (
    BACKGROUNDS,
    CATEGORIES,
    CATEGORY_NAMES,
    FAMILIES,
    GRID_CELLS,
    NUMBER_WORDS,
    SEEN_CATEGORIES,
)

_ARTICLES = {"a", "e", "i", "o", "u"}


def _article(word: str) -> str:
    return "an" if word[0] in _ARTICLES else "a"


def _cell_tokens(x: float, y: float) -> str:
    cx = min(GRID_CELLS - 1, int(x / (geo.TABLE / GRID_CELLS)))
    cy = min(GRID_CELLS - 1, int(y / (geo.TABLE / GRID_CELLS)))
    return f"x{cx} y{cy}"


def decode_cell(text: str) -> tuple[int, int] | None:
    parts = text.split()
    if len(parts) != 2 or not parts[0].startswith("x") or not parts[1].startswith("y"):
        return None
    return int(parts[0][1:]), int(parts[1][1:])


def sample_vl_scene(rng: np.random.Generator, p_unseen: float = 0.3) -> SceneConfig:
    """A table scene for a web-image stand-in; may include held-out categories."""
    n = int(rng.integers(4, 7))
    pool = list(CATEGORY_NAMES) if rng.random() < p_unseen else list(SEEN_CATEGORIES)
    cats = [str(c) for c in rng.choice(pool, size=n, replace=False)]
    bg = int(rng.integers(len(BACKGROUNDS)))
    return build_scene(rng, cats, bg, seed=int(rng.integers(2**31 - 1)))


def _caption(scene: SceneConfig, rng: np.random.Generator) -> tuple[str, str]:
    objs = list(scene.objects)
    picks = [objs[i] for i in rng.choice(len(objs), size=min(3, len(objs)), replace=False)]
    bits = [f"{_article(o.size)} {o.size} {o.category}" for o in picks]
    listing = " , ".join(bits[:-1]) + f" and {bits[-1]}" if len(bits) > 1 else bits[0]
    o = picks[int(rng.integers(len(picks)))]
    fam = o.family
    return "describe the scene", f"the scene has {listing} . the {o.category} is {_article(fam)} {fam}"


def _grounding(scene: SceneConfig, rng: np.random.Generator) -> tuple[str, str] | None:
    options: list[str] = []
    counts: dict[str, int] = {}
    fam_counts: dict[str, int] = {}
    for o in scene.objects:
        counts[o.category] = counts.get(o.category, 0) + 1
        fam_counts[o.family] = fam_counts.get(o.family, 0) + 1
    options += [c for c, n in counts.items() if n == 1]
    options += [f for f, n in fam_counts.items() if n == 1]
    radii = sorted(o.radius for o in scene.objects)
    if len(radii) > 1 and radii[-1] > radii[-2]:
        options.append("largest object")
    if len(radii) > 1 and radii[0] < radii[1]:
        options.append("smallest object")
    for cat, n in counts.items():
        if n == 2:
            anchors = [c for c, m in counts.items() if m == 1]
            if anchors:
                options.append(f"{cat} next to the {anchors[int(rng.integers(len(anchors)))]}")
    if not options:
        return None
    desc = options[int(rng.integers(len(options)))]
    oid = resolve_descriptor(scene, desc)
    if oid is None:
        return None
    o = scene.object_by_id(oid)
    return f"where is the {desc} ?", _cell_tokens(o.x, o.y)


def _qa(scene: SceneConfig, rng: np.random.Generator) -> tuple[str, str]:
    mode = int(rng.integers(3))
    if mode == 0:
        fam = FAMILIES[int(rng.integers(len(FAMILIES)))]
        n = sum(1 for o in scene.objects if o.family == fam)
        return f"how many {fam} objects are there ?", NUMBER_WORDS[min(n, 9)]
    if mode == 1:
        o = scene.objects[int(rng.integers(len(scene.objects)))]
        fam = CATEGORIES[o.category].family
        return f"what kind of object is the {o.category} ?", f"{_article(fam)} {fam}"
    which = "largest" if rng.random() < 0.5 else "smallest"
    oid = resolve_descriptor(scene, f"{which} object")
    return f"which object is the {which} ?", f"the {scene.object_by_id(oid).category}"


def gen_vl_sample(scene: SceneConfig, rng: np.random.Generator, tokenizer: Tokenizer) -> VLSample:
    """One caption/grounding/qa sample over a rendered bare-table image."""
    r = rng.random()
    if r < 0.45:
        made = _grounding(scene, rng)
        task = "grounding"
        if made is None:
            made, task = _caption(scene, rng), "caption"
    elif r < 0.75:
        made, task = _qa(scene, rng), "qa"
    else:
        made, task = _caption(scene, rng), "caption"
    prompt, target = made
    return VLSample(
        image=render_scene_head(scene),
        prompt_ids=np.asarray(tokenizer.encode(prompt), dtype=np.int64),
        target_ids=np.asarray(tokenizer.encode(target), dtype=np.int64),
        task=task,
    )


def vl_stream(seed: int, tokenizer: Tokenizer, p_unseen: float = 0.3):
    """Endless seeded generator of vision-language samples."""
    rng = np.random.default_rng(seed)
    while True:
        scene = sample_vl_scene(rng, p_unseen=p_unseen)
        yield gen_vl_sample(scene, rng, tokenizer)
