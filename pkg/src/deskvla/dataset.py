"""Dataset container: a directory of manifest.json plus one binary record per episode.

Array records are little-endian: a 16-byte header (u32 rank, 3x u32 dims, unused
dims zero) followed by a float32 payload. See FORMAT.md at the repository root.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .types import Episode, Instruction

SCHEMA_VERSION = 1
_HEADER = struct.Struct("<4I")


class DatasetFormatError(ValueError):
    pass


def write_array(buf, arr: np.ndarray) -> None:
    a = np.ascontiguousarray(arr, dtype=np.float32)
    if a.ndim > 3:
        raise DatasetFormatError(f"array rank {a.ndim} exceeds the 3-dim format limit")
    dims = list(a.shape) + [0] * (3 - a.ndim)
    buf.write(_HEADER.pack(a.ndim, *dims))
    buf.write(a.astype("<f4").tobytes())


def read_array(buf, context: str = "") -> np.ndarray:
    raw = buf.read(_HEADER.size)
    if len(raw) != _HEADER.size:
        raise DatasetFormatError(f"truncated array header {context}")
    rank, d0, d1, d2 = _HEADER.unpack(raw)
    if rank < 1 or rank > 3:
        raise DatasetFormatError(f"corrupt array header (rank={rank}) {context}")
    dims = [d0, d1, d2][:rank]
    if any(d == 0 for d in dims):
        raise DatasetFormatError(f"corrupt array header (zero dim) {context}")
    count = int(np.prod(dims))
    payload = buf.read(4 * count)
    if len(payload) != 4 * count:
        raise DatasetFormatError(f"truncated array payload {context}")
    return np.frombuffer(payload, dtype="<f4").reshape(dims).copy()


def _episode_file(i: int) -> str:
    return f"ep_{i:05d}.bin"


def write_dataset(episodes: list[Episode], path: str | Path) -> dict:
    """Write episodes to a container directory; returns the manifest dict."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, ep in enumerate(episodes):
        t, v, h, w, _ = ep.images.shape
        with open(path / _episode_file(i), "wb") as f:
            write_array(f, ep.images.reshape(t, v, h * w * 3))
            write_array(f, ep.states)
            write_array(f, ep.actions)
            write_array(f, ep.view_valid.astype(np.float32))
            write_array(f, ep.state_valid.astype(np.float32))
        entries.append(
            {
                "file": _episode_file(i),
                "seed": ep.seed,
                "embodiment": ep.embodiment,
                "instruction": ep.instruction.text,
                "meta": ep.instruction.meta,
                "scene": ep.scene,
                "n_steps": len(ep),
                "image_hw": [h, w],
            }
        )
    d = int(episodes[0].actions.shape[1]) if episodes else 0
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "d": d,
        "k": 0,  # chunk length is a training-time choice; recorded by train configs
        "d_state": int(episodes[0].states.shape[1]) if episodes else 0,
        "n_episodes": len(episodes),
        "episodes": entries,
    }
    with open(path / "manifest.json", "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=1, sort_keys=True)
    return manifest


def read_manifest(path: str | Path) -> dict:
    path = Path(path)
    try:
        with open(path / "manifest.json", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise DatasetFormatError(f"no manifest.json under {path}") from e


def read_episode(path: str | Path, manifest: dict, index: int) -> Episode:
    entry = manifest["episodes"][index]
    ctx = f"(episode {index})"
    with open(Path(path) / entry["file"], "rb") as f:
        images = read_array(f, ctx)
        states = read_array(f, ctx)
        actions = read_array(f, ctx)
        view_valid = read_array(f, ctx)
        state_valid = read_array(f, ctx)
    h, w = entry["image_hw"]
    t, v, flat = images.shape
    if flat != h * w * 3:
        raise DatasetFormatError(f"image payload does not match manifest image_hw {ctx}")
    return Episode(
        instruction=Instruction(text=entry["instruction"], meta=entry["meta"]),
        images=images.reshape(t, v, h, w, 3),
        states=states,
        actions=actions,
        view_valid=view_valid.astype(bool),
        state_valid=state_valid.astype(bool),
        embodiment=entry["embodiment"],
        scene=entry["scene"],
        seed=entry["seed"],
    )


def read_dataset(path: str | Path) -> list[Episode]:
    manifest = read_manifest(path)
    return [read_episode(path, manifest, i) for i in range(manifest["n_episodes"])]
