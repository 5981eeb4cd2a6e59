"""Prompt templates shipped as versioned text assets."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def prompt_text(name: str) -> str:
    """Load a prompt asset by stem, e.g. prompt_text("manager")."""
    ref = resources.files(__package__) / f"{name}.txt"
    try:
        return ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KeyError(f"no prompt asset named {name!r}") from None


__all__ = ["prompt_text"]
