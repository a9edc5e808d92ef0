"""Object taxonomy of the tabletop world.

Category identity is carried primarily by hue: each hypernym family owns a hue
band and its members sit at distinct offsets inside it, so family membership is
visually recoverable at low resolution. Shape glyphs add per-member texture.
Sixteen categories are designated seen (eligible for robot-trajectory data);
eight are held out for the unseen-object split.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass

SIZES = {"small": 0.5, "medium": 0.8, "large": 1.1}
SIZE_NAMES = tuple(SIZES)

SHAPES = ("circle", "square", "triangle", "diamond")

# family name -> (hue center in degrees, members in hue-offset order)
_FAMILY_DEFS = {
    "fruit": (0, ["apple", "banana", "grape", "melon"]),
    "tool": (60, ["hammer", "wrench", "drill", "saw"]),
    "vegetable": (120, ["carrot", "pepper", "onion", "radish"]),
    "marine animal": (180, ["fish", "crab", "shark", "eel"]),
    "vehicle": (240, ["car", "truck", "bus", "tram"]),
    "toy": (300, ["ball", "kite", "drum", "robot"]),
}

_UNSEEN = {"melon", "saw", "radish", "shark", "eel", "tram", "drum", "robot"}

_HUE_OFFSETS = (-21.0, -7.0, 7.0, 21.0)
_VALUES = (1.0, 0.8, 0.9, 0.7)


@dataclass(frozen=True)
class Category:
    name: str
    family: str
    color: tuple[float, float, float]
    shape: str
    seen: bool


def _build() -> dict[str, Category]:
    cats = {}
    for family, (center, members) in _FAMILY_DEFS.items():
        for i, name in enumerate(members):
            hue = ((center + _HUE_OFFSETS[i]) % 360.0) / 360.0
            rgb = colorsys.hsv_to_rgb(hue, 0.9, _VALUES[i])
            cats[name] = Category(
                name=name,
                family=family,
                color=tuple(round(c, 4) for c in rgb),
                shape=SHAPES[i],
                seen=name not in _UNSEEN,
            )
    return cats


CATEGORIES: dict[str, Category] = _build()
CATEGORY_NAMES = tuple(CATEGORIES)
SEEN_CATEGORIES = tuple(n for n, c in CATEGORIES.items() if c.seen)
UNSEEN_CATEGORIES = tuple(n for n, c in CATEGORIES.items() if not c.seen)
FAMILIES = tuple(_FAMILY_DEFS)

CONTAINERS = {
    "box": (0.45, 0.32, 0.18),
    "bin": (0.30, 0.30, 0.34),
    "tray": (0.80, 0.78, 0.62),
}
CONTAINER_NAMES = tuple(CONTAINERS)

# Table background colors; the last two are held out for the unseen-environment split.
BACKGROUNDS = (
    (0.16, 0.16, 0.16),
    (0.24, 0.20, 0.16),
    (0.14, 0.18, 0.22),
    (0.22, 0.22, 0.14),
    (0.30, 0.26, 0.28),
    (0.12, 0.24, 0.14),
)
SEEN_BACKGROUNDS = (0, 1, 2, 3)
UNSEEN_BACKGROUNDS = (4, 5)

NUMBER_WORDS = ("zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine")
GRID_CELLS = 8
X_TOKENS = tuple(f"x{i}" for i in range(GRID_CELLS))
Y_TOKENS = tuple(f"y{i}" for i in range(GRID_CELLS))

# Words that may legitimately appear in both robot-episode instructions and the
# held-out instruction templates (shared grammar plus container names).
FUNCTION_WORDS = frozenset(
    {"put", "the", "into", "a", "an", "and", "of", "is", "to", ",", "?", "."}
) | set(CONTAINER_NAMES)

_TEMPLATE_WORDS = (
    "put", "the", "into", "where", "is", "what", "kind", "of", "object",
    "objects", "how", "many", "are", "there", "which", "a", "an", "and",
    "scene", "has", "describe", "next", "to", "largest", "smallest",
    ",", "?", ".",
)

_FAMILY_WORDS = tuple(dict.fromkeys(w for f in FAMILIES for w in f.split()))

VOCAB_WORDS: list[str] = list(
    dict.fromkeys(
        _TEMPLATE_WORDS
        + CATEGORY_NAMES
        + _FAMILY_WORDS
        + CONTAINER_NAMES
        + SIZE_NAMES
        + NUMBER_WORDS
        + X_TOKENS
        + Y_TOKENS
    )
)
