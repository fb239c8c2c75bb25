"""Compile job schema."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, model_validator

from twirlc.core.interactions import ControlMode, InteractionModel, Target


class JobSchema(BaseModel):
    """One compile request: a device, exactly one target and its outputs."""

    device: str
    model: Optional[InteractionModel] = None
    target: Target
    mode: ControlMode = ControlMode.BANG_BANG
    preserve: Optional[Path] = None
    suppress: Optional[Path] = None
    seed_order: Optional[Path] = None
    sign_flip: bool = False
    out: Path

    @model_validator(mode="after")
    def one_target(self) -> "JobSchema":
        if self.target == Target.SELECTIVE:
            if self.preserve is None:
                raise ValueError("selective targets need --preserve")
        elif self.preserve is not None or self.suppress is not None:
            raise ValueError("--preserve/--suppress only apply to the selective target")
        if self.sign_flip and self.target != Target.SELECTIVE:
            raise ValueError("--sign-flip only applies to the selective target")
        return self
