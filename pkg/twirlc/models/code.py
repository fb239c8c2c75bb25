"""Code file schema: generator strings of an additive code."""

from typing import List, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from twirlc.models._letters import check_equal_lengths, check_pauli_text


class CodeSchema(BaseModel):
    name: str = ""
    n: int = Field(ge=1)
    alphabet: Literal["F2", "F4"] = "F4"
    generators: List[str] = Field(default_factory=list)

    @field_validator("generators")
    @classmethod
    def letters(cls, value: List[str]) -> List[str]:
        return [check_pauli_text(g) for g in value]

    @model_validator(mode="after")
    def lengths(self) -> "CodeSchema":
        check_equal_lengths(self.generators, self.n, "generator")
        return self
