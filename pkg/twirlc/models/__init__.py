"""File format schemas."""

from twirlc.models.code import CodeSchema
from twirlc.models.device import ColoringSchema, DeviceSchema, HyperedgeSchema
from twirlc.models.hamiltonian import HamiltonianSchema, TermSchema
from twirlc.models.job import JobSchema
from twirlc.models.report import SimReportSchema
from twirlc.models.schedule import ScheduleSchema
from twirlc.models.verdict import TermVerdictSchema, VerdictSchema

__all__ = [
    "CodeSchema",
    "ColoringSchema",
    "DeviceSchema",
    "HamiltonianSchema",
    "HyperedgeSchema",
    "JobSchema",
    "ScheduleSchema",
    "SimReportSchema",
    "TermSchema",
    "TermVerdictSchema",
    "VerdictSchema",
]
