"""Command modules; each exposes ``register(subparsers)``."""

from twirlc.api import codes, color, compile_job, scaling, simulate, verify

COMMANDS = (color, compile_job, verify, scaling, simulate, codes)
