"""Schedule file schema."""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from twirlc.models._letters import check_equal_lengths, check_pauli_text


class ScheduleSchema(BaseModel):
    name: str = ""
    mode: Literal["bb", "bounded"] = "bb"
    colors: List[int] = Field(default_factory=list)
    L: int = Field(ge=0)
    frames: List[str] = Field(default_factory=list)
    interpulse: List[str] = Field(default_factory=list)
    labels: List[str] = Field(default_factory=list)
    visited: List[str] = Field(default_factory=list)
    generators: List[str] = Field(default_factory=list)
    lifted: Optional[Dict[str, str]] = None

    @field_validator("frames", "interpulse", "visited", "generators")
    @classmethod
    def letters(cls, value: List[str]) -> List[str]:
        return [check_pauli_text(v) for v in value]

    @model_validator(mode="after")
    def consistent(self) -> "ScheduleSchema":
        if self.L != len(self.frames):
            raise ValueError(f"L={self.L} but {len(self.frames)} frames")
        n = len(self.colors)
        for name in ("frames", "interpulse", "visited", "generators"):
            check_equal_lengths(getattr(self, name), n, name[:-1])
        if self.lifted is not None:
            for qubit, letters in self.lifted.items():
                if len(letters) != self.L:
                    raise ValueError(f"qubit {qubit} has {len(letters)} slots, expected {self.L}")
        return self
