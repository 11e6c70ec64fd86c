"""Pydantic request/response models for the HTTP API.

Complex numbers travel as ``[re, im]`` pairs.  ``ChainSpecModel`` mirrors the
chain-spec JSON document exactly (keys ``n_sites``, ``hopping``, ``pairing``,
``chemical_potential``, ``profile``).
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..model import ChainSpec, GainProfile
from ..sweep import NEAR_ZERO_TOL, ProfileSpec

ComplexPair = tuple[float, float]


class ChainSpecModel(BaseModel):
    n_sites: int = Field(ge=2)
    hopping: float
    pairing: float = Field(ge=0)
    chemical_potential: float
    profile: list[float]

    def to_core(self) -> ChainSpec:
        return ChainSpec(
            n_sites=self.n_sites,
            hopping=self.hopping,
            pairing=self.pairing,
            chemical_potential=self.chemical_potential,
            profile=GainProfile(tuple(self.profile)),
        )

    @classmethod
    def from_core(cls, spec: ChainSpec) -> "ChainSpecModel":
        return cls(**spec.to_json_dict())


class ProfileModel(BaseModel):
    name: Literal["zero", "alternating", "two_impurity", "random"]
    g0: float = 0.0
    gain_site: int | None = None
    loss_site: int | None = None
    max_strength: float = 0.0
    seed: int | None = None

    def to_core(self) -> ProfileSpec:
        return ProfileSpec(
            kind=self.name,
            g0=self.g0,
            gain_site=self.gain_site,
            loss_site=self.loss_site,
            max_strength=self.max_strength,
            seed=self.seed,
        )


class SpectrumRequest(BaseModel):
    spec: ChainSpecModel
    zero_tolerance: float = 1e-10
    reality_tolerance: float = 1e-9


class SpectrumResponse(BaseModel):
    eigenvalues: list[ComplexPair]
    max_imag: float
    reality: str
    zero_count: int
    zero_eigenvalues: list[ComplexPair]
    scalar_offset: ComplexPair
    balanced: bool
    phase: str | None
    matrix_norm: float


class ZeroModesRequest(BaseModel):
    spec: ChainSpecModel
    zero_tolerance: float = 1e-10


class ZeroModesResponse(BaseModel):
    zero_count: int
    zero_eigenvalues: list[ComplexPair]
    edge_weights: list[tuple[float, float]]
    localization_lengths: list[float | None]


class AxisModel(BaseModel):
    name: Literal["mu", "delta", "g0"]
    min: float
    max: float
    steps: int = Field(ge=2)


class SweepRequest(BaseModel):
    base: ChainSpecModel
    axis: AxisModel
    profile: ProfileModel | None = None
    store_spectra: bool = False
    zero_tolerance: float = NEAR_ZERO_TOL
    reality_tolerance: float = 1e-9


class SweepRecordModel(BaseModel):
    mu: float
    delta: float
    g0: float | None
    seed: int | None
    max_imag: float
    reality: str
    zero_count: int
    min_abs_eig: float
    failed: bool = False


class SweepResponse(BaseModel):
    records: list[SweepRecordModel]
    csv: str
    spectra_csv: str | None


class CriticalRequest(BaseModel):
    base: ChainSpecModel
    axis: Literal["mu", "delta", "g0"]
    lo: float
    hi: float
    profile: ProfileModel | None = None
    reality_tolerance: float = 1e-9


class CriticalResponse(BaseModel):
    critical: float | None


class EnsembleRequest(BaseModel):
    n_sites: int = Field(default=12, ge=4)
    mu: float = 0.0
    hopping: float = 1.0
    pairing: float = 1.0
    max_strength: float = 0.5
    n_trials: int = Field(default=100, ge=1)
    seed: int = 1
    zero_tolerance: float = 1e-10


class TrialModel(BaseModel):
    seed: int
    zero_count: int
    min_abs_eigenvalue: float
    max_edge_deviation: float | None


class EnsembleResponse(BaseModel):
    n_trials: int
    fraction_two_modes: float
    max_edge_deviation: float | None
    trials: list[TrialModel]


class ReproduceRequest(BaseModel):
    figure: Literal["fig2", "fig3"]
    g0: float = Field(ge=0)
    steps: int = Field(default=121, ge=2)


class ReproduceResponse(BaseModel):
    base_name: str
    csv: str
    spectra_csv: str


class HealthResponse(BaseModel):
    status: str
    version: str
