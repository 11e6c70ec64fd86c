"""Typed API layer: pure functions from request models to response models.

The FastAPI app and the in-process CLI client both call these; errors
surface as the package's exception types and are mapped to transport
errors by the callers.
"""

from __future__ import annotations

import math

import numpy as np

from .. import __version__
from ..analysis import (
    classify_phase,
    classify_reality,
    detect_zero_modes,
    find_critical,
    scalar_offset_energy,
)
from ..eigen import eig, max_imag
from ..errors import InvalidSpecError
from ..hamiltonian import build_bdg
from ..model import ChainSpec, alternating_profile
from ..sweep import (
    SweepAxis,
    SweepConfig,
    render_csv,
    render_spectra_csv,
    run_random_ensemble,
    run_sweep,
)
from . import schemas as s


def _pair(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


def spectrum(req: s.SpectrumRequest) -> s.SpectrumResponse:
    spec = req.spec.to_core()
    result = eig(build_bdg(spec).entries)
    reality = classify_reality(result, req.reality_tolerance)
    cut = req.zero_tolerance * max(1.0, result.matrix_norm)
    zeros = [complex(z) for z in result.eigenvalues if abs(z) <= cut]
    phase = None
    if spec.hopping != 0:
        phase = classify_phase(spec.hopping, spec.chemical_potential).value
    return s.SpectrumResponse(
        eigenvalues=[_pair(complex(z)) for z in result.eigenvalues],
        max_imag=max_imag(result),
        reality=reality.tag.value,
        zero_count=len(zeros),
        zero_eigenvalues=[_pair(z) for z in zeros],
        scalar_offset=_pair(scalar_offset_energy(spec.profile)),
        balanced=spec.profile.is_balanced,
        phase=phase,
        matrix_norm=result.matrix_norm,
    )


def zero_modes(req: s.ZeroModesRequest) -> s.ZeroModesResponse:
    report = detect_zero_modes(req.spec.to_core(), zero_tolerance=req.zero_tolerance)
    return s.ZeroModesResponse(
        zero_count=report.zero_count,
        zero_eigenvalues=[_pair(z) for z in report.zero_eigenvalues],
        edge_weights=list(report.edge_weights),
        localization_lengths=list(report.localization_lengths),
    )


def sweep(req: s.SweepRequest) -> s.SweepResponse:
    config = SweepConfig(
        base=req.base.to_core(),
        axis=SweepAxis(
            name=req.axis.name,
            start=req.axis.min,
            stop=req.axis.max,
            steps=req.axis.steps,
        ),
        profile=req.profile.to_core() if req.profile else None,
        out_path=None,
        store_spectra=req.store_spectra,
        zero_tolerance=req.zero_tolerance,
        reality_tolerance=req.reality_tolerance,
    )
    records = run_sweep(config)
    return s.SweepResponse(
        records=[
            s.SweepRecordModel(
                mu=r.mu, delta=r.delta, g0=r.g0, seed=r.seed, max_imag=r.max_imag,
                reality=r.reality, zero_count=r.zero_count,
                min_abs_eig=r.min_abs_eig, failed=r.failed,
            )
            for r in records
        ],
        csv=render_csv(records),
        spectra_csv=render_spectra_csv(records) if req.store_spectra else None,
    )


def critical(req: s.CriticalRequest) -> s.CriticalResponse:
    base = req.base.to_core()
    profile = req.profile.to_core() if req.profile else None
    if req.axis == "g0" and profile is None:
        raise InvalidSpecError("critical search over g0 needs a profile constructor")

    def family(theta: float) -> ChainSpec:
        if req.axis == "mu":
            return base.with_(chemical_potential=theta)
        if req.axis == "delta":
            return base.with_(pairing=theta)
        return base.with_(profile=profile.build(base.n_sites, amplitude=theta))

    value = find_critical(family, (req.lo, req.hi), req.reality_tolerance)
    return s.CriticalResponse(critical=value)


def random_ensemble(req: s.EnsembleRequest) -> s.EnsembleResponse:
    summary = run_random_ensemble(
        n_sites=req.n_sites,
        mu=req.mu,
        hopping=req.hopping,
        pairing=req.pairing,
        max_strength=req.max_strength,
        n_trials=req.n_trials,
        seed=req.seed,
        zero_tolerance=req.zero_tolerance,
    )

    def clean(x: float) -> float | None:
        return None if math.isnan(x) else x

    return s.EnsembleResponse(
        n_trials=summary.n_trials,
        fraction_two_modes=summary.fraction_two_modes,
        max_edge_deviation=clean(summary.max_edge_deviation),
        trials=[
            s.TrialModel(
                seed=t.seed,
                zero_count=t.zero_count,
                min_abs_eigenvalue=t.min_abs_eigenvalue,
                max_edge_deviation=clean(t.max_edge_deviation),
            )
            for t in summary.trials
        ],
    )


def reproduce(req: s.ReproduceRequest) -> s.ReproduceResponse:
    """Figure-reproduction sweeps at the published parameter settings.

    fig2: N=12, delta=T=1, alternating profile, mu from -3 to 3.
    fig3: N=12, mu=T=1, alternating profile, delta from 0 to 3.
    """
    from ..sweep import ProfileSpec

    profile = ProfileSpec(kind="alternating", g0=req.g0)
    base = ChainSpec(
        n_sites=12,
        hopping=1.0,
        pairing=1.0,
        chemical_potential=1.0 if req.figure == "fig3" else 0.0,
        profile=alternating_profile(12, req.g0),
    )
    if req.figure == "fig2":
        axis = SweepAxis(name="mu", start=-3.0, stop=3.0, steps=req.steps)
    else:
        axis = SweepAxis(name="delta", start=0.0, stop=3.0, steps=req.steps)
    config = SweepConfig(
        base=base, axis=axis, profile=profile, out_path=None, store_spectra=True
    )
    records = run_sweep(config)
    return s.ReproduceResponse(
        base_name=f"{req.figure}_g{req.g0:g}",
        csv=render_csv(records),
        spectra_csv=render_spectra_csv(records),
    )


def health() -> s.HealthResponse:
    return s.HealthResponse(status="ok", version=__version__)
