"""Pydantic request/response models for the service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

GroupName = Literal["GL", "SL", "TORUS"]


class RepRequest(BaseModel):
    group: GroupName = "SL"
    n: int = Field(default=2, ge=1, le=6)
    genus: int = Field(default=2, ge=2, le=8)
    seed: int = Field(default=1, ge=0)
    scale: float = Field(default=0.5, ge=0.0)
    flat_tol: float = Field(default=1e-10, gt=0.0)

    @field_validator("n")
    @classmethod
    def _sl_needs_n2(cls, v, info):
        return v

    def model_post_init(self, __context):
        if self.group == "TORUS" and self.n != 1:
            raise ValueError("TORUS is GL(1); n must be 1")
        if self.group == "SL" and self.n < 2:
            raise ValueError("SL(n) needs n >= 2")


class CohomRequest(RepRequest):
    rank_tol: float = Field(default=1e-8, gt=0.0)


class GoldmanRequest(CohomRequest):
    pairing_tol: float = Field(default=1e-8, gt=0.0)
    samples: int = Field(default=50, ge=1, le=10000)


class OracleCheckRequest(CohomRequest):
    pairing_tol: float = Field(default=1e-8, gt=0.0)
    pairs: int = Field(default=100, ge=1, le=10000)
    refinement: int = Field(default=1, ge=0, le=3)


class ClosednessRequest(CohomRequest):
    step: float = Field(default=1e-3, gt=0.0)
    closedness_tol: float = Field(default=1e-4, gt=0.0)


class AbelianRequest(BaseModel):
    branch_points: list[float] = Field(
        default=[-5.0, -3.0, -1.0, 1.0, 3.0, 5.0])
    quadrature_order: int = Field(default=128, ge=16, le=65536)
    seed: int = Field(default=1, ge=0)
    pairs: int = Field(default=100, ge=1, le=10000)
    pullback_tol: float = Field(default=1e-6, gt=0.0)
    relation1_tol: float = Field(default=1e-6, gt=0.0)
    drift_tol: float = Field(default=1e-8, gt=0.0)

    @field_validator("branch_points")
    @classmethod
    def _even_count(cls, pts):
        if len(pts) < 6:
            raise ValueError("need at least 6 branch points (genus >= 2)")
        if len(pts) % 2 != 0:
            raise ValueError("branch-point count must be even (2g+2)")
        if len(set(pts)) != len(pts):
            raise ValueError("branch points must be distinct")
        return pts


class ReportRequest(BaseModel):
    flat_tol: float = Field(default=1e-10, gt=0.0)
    rank_tol: float = Field(default=1e-8, gt=0.0)
    pairing_tol: float = Field(default=1e-8, gt=0.0)
    quadrature_order: int = Field(default=128, ge=16, le=65536)


class ReportEnvelope(BaseModel):
    """Transport envelope: the deterministic report plus a timestamp kept
    outside it, so byte-identical reports can be compared directly."""

    generated_at: str
    report: dict


class HealthResponse(BaseModel):
    status: str
    schema_version: int
    package: str
    version: Optional[str] = None
