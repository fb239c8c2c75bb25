"""Hamiltonian file schemas."""

from typing import List, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from twirlc.models._letters import check_equal_lengths, check_pauli_text


class TermSchema(BaseModel):
    pauli: str
    coeff: float = 1.0
    role: Literal["suppress", "preserve"] = "suppress"

    @field_validator("pauli")
    @classmethod
    def letters(cls, value: str) -> str:
        return check_pauli_text(value)


class HamiltonianSchema(BaseModel):
    n: int = Field(ge=1)
    terms: List[TermSchema] = Field(default_factory=list)

    @model_validator(mode="after")
    def lengths(self) -> "HamiltonianSchema":
        check_equal_lengths([t.pauli for t in self.terms], self.n, "term")
        return self
