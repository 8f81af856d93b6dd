"""Numeric configuration knobs, settable from the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple


@dataclass
class Config:
    # Working precision for Newton refinement and report values.
    precision_bits: int = 256
    # Zero-test ball escalation schedule.
    zero_test_schedule: Tuple[int, ...] = (64, 256, 1024)
    # Laurent truncation depth escalation cap.
    laurent_depth_cap: int = 128
    # Rectangle subdivision cell budget.
    subdivision_budget: int = 10_000
    # Newton refinement step residual.
    newton_residual: float = 1e-30
    # Snap tolerance to the rational / pi-multiple grid.
    snap_tolerance: float = 1e-20
    # Max denominator for rational snapping, and for pi multiples.
    snap_denominator: int = 10 ** 6
    snap_pi_denominator: int = 24
    # Allowed distance of a rounded winding integral from the integer.
    winding_residual: float = 1e-3


_current = Config()


def current() -> Config:
    return _current


def set_precision(bits: int) -> None:
    if bits < 16:
        raise ValueError("precision must be at least 16 bits")
    _current.precision_bits = bits
    schedule = sorted({64, 256, 1024, bits})
    _current.zero_test_schedule = tuple(schedule)
