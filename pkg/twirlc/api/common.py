"""Helpers shared by the command modules."""

import argparse
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from twirlc import storage
from twirlc.config import settings
from twirlc.core.device_graph import Coloring, DeviceGraph, QuotientGraph, color, quotient
from twirlc.core.errors import InvalidInputError
from twirlc.core.interactions import InteractionModel, is_supported_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColoredDevice:
    device: DeviceGraph
    coloring: Coloring
    quotient: QuotientGraph


def add_device_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--device", required=True, help="device JSON path or bundled name")
    parser.add_argument("--model", help="interaction model applied to every hyperedge")
    parser.add_argument("--seed-order", type=Path, help="JSON list of vertex ids for DSATUR")


def add_out_argument(parser: argparse.ArgumentParser, default_name: str) -> None:
    parser.add_argument(
        "--out",
        type=Path,
        default=settings.DEFAULT_OUT_DIR / default_name,
        help=f"output path (default {settings.DEFAULT_OUT_DIR / default_name})",
    )


def parse_model(name: Optional[str]) -> Optional[InteractionModel]:
    if name is None:
        return None
    if not is_supported_model(name):
        raise InvalidInputError(f"Unknown interaction model {name!r}")
    return InteractionModel(name)


def colored_device(
    device_name: str,
    model: Optional[str] = None,
    seed_order: Optional[Path] = None,
) -> ColoredDevice:
    """Load, re-model, color and collapse a device."""
    device = storage.load_device(device_name)
    chosen = parse_model(model)
    if chosen is not None:
        device = device.with_model(chosen)
    order = storage.load_seed_order(seed_order) if seed_order else None
    coloring = color(device, order)
    return ColoredDevice(device, coloring, quotient(device, coloring))


def parse_deltas(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"Bad delta list {text!r}") from exc
    if len(values) < 1 or any(v <= 0 for v in values):
        raise InvalidInputError("Deltas must be positive")
    return values
