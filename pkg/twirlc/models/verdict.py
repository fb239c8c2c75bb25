"""Verdict report schemas."""

from typing import List, Optional

from pydantic import BaseModel, Field


class TermVerdictSchema(BaseModel):
    term: str
    role: str
    status: str
    ok: bool
    witness: Optional[str] = None
    leak: Optional[str] = None


class VerdictSchema(BaseModel):
    group: str
    mode: str
    ok: bool
    group_size: Optional[int] = Field(default=None, ge=1)
    generators: List[str] = Field(default_factory=list)
    counterexample: Optional[str] = None
    entries: List[TermVerdictSchema] = Field(default_factory=list)
