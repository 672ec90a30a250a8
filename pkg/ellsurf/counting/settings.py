"""Validated knobs for the point-counting engine."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from ..fields import TABLE_LIMIT


class Strategy(str, Enum):
    """How the trace of a good fiber is computed."""

    CHAR_SUM = "char-sum"
    BSGS = "bsgs"
    AUTO = "auto"


class CountingSettings(BaseModel):
    """Strategy, thresholds and parallelism of :func:`surface_count`."""

    model_config = ConfigDict(extra="forbid")

    strategy: Strategy = Field(default=Strategy.AUTO)
    bsgs_threshold: int = Field(default=1 << 16, ge=1)
    table_threshold: int = Field(default=TABLE_LIMIT, ge=1, le=TABLE_LIMIT)
    threads: int = Field(default=1, ge=1)
    bsgs_attempts: int = Field(default=4, ge=1)
    seed: int = Field(default=0, ge=0)
    check_hasse: bool = Field(default=True)
    orbit_reduction: bool = Field(default=True)
    chunk_size: int = Field(default=512, ge=1)

    def strategy_for(self, field_size: int) -> Strategy:
        """Concrete strategy for a fiber over a field with ``field_size`` elements."""

        if self.strategy is not Strategy.AUTO:
            return self.strategy
        return Strategy.CHAR_SUM if field_size <= self.bsgs_threshold else Strategy.BSGS

    def uses_tables(self, field_size: int) -> bool:
        return field_size <= self.table_threshold


__all__ = ["CountingSettings", "Strategy"]
