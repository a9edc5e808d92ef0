"""Procedural tabletop world: taxonomy, scenes, simulator, expert, language, VL data."""

from .scene import Container, ObjectSpec, SceneConfig, SchedulerState, schedule_next
from .sim import SimEvent, TabletopSim
from .language import resolve_instruction

__all__ = [
    "Container",
    "ObjectSpec",
    "SceneConfig",
    "SchedulerState",
    "SimEvent",
    "TabletopSim",
    "resolve_instruction",
    "schedule_next",
]
