"""
Device Schemas.

Interaction hypergraph files: vertices, hyperedges with an interaction model
or explicit per-site alphabets, onsite alphabets and an optional coloring.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from twirlc.core.interactions import InteractionModel


def _joined(letters: Any) -> Any:
    """Accept a letter list such as ["I", "X"] as the string "IX"."""
    if isinstance(letters, (list, tuple)) and all(isinstance(c, str) for c in letters):
        return "".join(letters)
    return letters


class HyperedgeSchema(BaseModel):
    """One hyperedge of the device."""

    sites: List[int] = Field(min_length=2)
    model: InteractionModel = InteractionModel.ALL
    alphabet: Optional[List[str]] = None

    @field_validator("alphabet", mode="before")
    @classmethod
    def join_alphabet_lists(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            return [_joined(letters) for letters in value]
        return value

    @field_validator("alphabet")
    @classmethod
    def alphabet_letters(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is not None:
            for letters in value:
                if not letters or set(letters) - set("IXYZ"):
                    raise ValueError(f"bad site alphabet {letters!r}")
        return value

    @model_validator(mode="after")
    def custom_needs_alphabet(self) -> "HyperedgeSchema":
        if self.model == InteractionModel.CUSTOM:
            if self.alphabet is None or len(self.alphabet) != len(self.sites):
                raise ValueError("custom hyperedges need one alphabet per site")
        return self


class DeviceSchema(BaseModel):
    name: str = "device"
    vertices: List[int] = Field(default_factory=list)
    hyperedges: List[HyperedgeSchema] = Field(default_factory=list)
    onsite: Dict[str, str] = Field(default_factory=dict)
    coloring: Optional[Dict[str, int]] = None

    @field_validator("onsite", mode="before")
    @classmethod
    def join_onsite_lists(cls, value: Any) -> Any:
        if isinstance(value, dict):
            return {vertex: _joined(letters) for vertex, letters in value.items()}
        return value

    @field_validator("onsite")
    @classmethod
    def onsite_letters(cls, value: Dict[str, str]) -> Dict[str, str]:
        for vertex, letters in value.items():
            if set(letters) - set("XYZ"):
                raise ValueError(f"bad onsite alphabet {letters!r} for vertex {vertex}")
        return value

    @field_validator("coloring")
    @classmethod
    def positive_colors(cls, value: Optional[Dict[str, int]]) -> Optional[Dict[str, int]]:
        if value is not None and any(c < 1 for c in value.values()):
            raise ValueError("color ids start at 1")
        return value


class ColoringSchema(BaseModel):
    device: str
    num_colors: int = Field(ge=0)
    coloring: Dict[str, int] = Field(default_factory=dict)
