"""Numerical oracle report schema."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class SimReportSchema(BaseModel):
    name: str = ""
    ok: bool = True
    deltas: List[float] = Field(default_factory=list)
    errors: List[float] = Field(default_factory=list)
    slope: Optional[float] = None
    residuals: Dict[str, float] = Field(default_factory=dict)
    coefficients: Dict[str, float] = Field(default_factory=dict)
