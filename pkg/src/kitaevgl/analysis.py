"""Physics-level interpretation of spectra.

Zero-mode detection and localization, spectral-reality classification,
topological phase labels and the bisection search for critical parameter
values.  Tolerances are relative to max(1, ||M||_F) so they survive
rescaling the energy unit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .eigen import RESIDUAL_RTOL, SpectrumResult, eig, max_imag
from .errors import AmbiguousCrossingError, InvalidParameterError
from .hamiltonian import build_bdg, to_majorana_basis
from .model import ChainSpec, GainProfile

__all__ = [
    "ZERO_RTOL",
    "REALITY_RTOL",
    "PhaseLabel",
    "RealityTag",
    "RealityClass",
    "ZeroModeReport",
    "detect_zero_modes",
    "classify_phase",
    "classify_reality",
    "scalar_offset_energy",
    "find_critical",
]

#: Default relative tolerance for |lambda| ~ 0.
ZERO_RTOL = 1e-10
#: Default relative tolerance for Im lambda ~ 0.
REALITY_RTOL = 1e-9
#: Sites with Majorana weight below this are dropped from localization fits.
_FIT_WEIGHT_FLOOR = 1e-14
#: Minimum R^2 for a localization fit to be reported.
_FIT_MIN_R2 = 0.9


class PhaseLabel(Enum):
    TOPOLOGICAL_NONTRIVIAL = "TopologicalNontrivial"
    TRIVIAL = "Trivial"
    GAP_CLOSING = "GapClosing"


class RealityTag(Enum):
    REAL = "Real"
    PARTIALLY_COMPLEX = "PartiallyComplex"
    FULLY_COMPLEX = "FullyComplex"


@dataclass(frozen=True)
class RealityClass:
    tag: RealityTag
    max_imag: float


@dataclass(frozen=True)
class ZeroModeReport:
    """Zero modes of one chain, with edge localization diagnostics.

    ``edge_weights[m]`` is the pair (w_left, w_right): the summed |amplitude|^2
    of mode m on the two Majorana flavors of site 1 and of site N.
    ``localization_lengths[m]`` is the decay length in sites from an
    exponential fit, or None when the mode sits exactly on an edge or the
    fit is rejected.
    """

    zero_count: int
    zero_eigenvalues: tuple[complex, ...]
    edge_weights: tuple[tuple[float, float], ...]
    localization_lengths: tuple[float | None, ...]

    def to_json_dict(self) -> dict:
        return {
            "zero_count": self.zero_count,
            "zero_eigenvalues": [[z.real, z.imag] for z in self.zero_eigenvalues],
            "edge_weights": [[wl, wr] for wl, wr in self.edge_weights],
            "localization_lengths": list(self.localization_lengths),
        }


def scalar_offset_energy(profile: GainProfile) -> complex:
    """Uniform many-body energy shift (i/2) sum_j g_j; zero iff balanced."""
    return 0.5j * profile.total


def classify_phase(hopping: float, mu: float) -> PhaseLabel:
    """Topological label from |mu| vs 2|T| (relative 1e-12 boundary band)."""
    if hopping == 0:
        raise InvalidParameterError("phase label undefined for hopping = 0")
    edge = 2.0 * abs(hopping)
    if abs(abs(mu) - edge) <= 1e-12 * max(1.0, abs(mu), edge):
        return PhaseLabel.GAP_CLOSING
    return PhaseLabel.TOPOLOGICAL_NONTRIVIAL if abs(mu) < edge else PhaseLabel.TRIVIAL


def classify_reality(
    spectrum: SpectrumResult, reality_tolerance: float = REALITY_RTOL
) -> RealityClass:
    """Real / partially complex / fully complex, at a relative tolerance."""
    if reality_tolerance <= 0:
        raise InvalidParameterError("reality_tolerance must be > 0")
    cut = reality_tolerance * max(1.0, spectrum.matrix_norm)
    imags = np.abs(spectrum.eigenvalues.imag)
    mi = float(imags.max())
    if mi <= cut:
        tag = RealityTag.REAL
    elif float(imags.min()) > cut:
        tag = RealityTag.FULLY_COMPLEX
    else:
        tag = RealityTag.PARTIALLY_COMPLEX
    return RealityClass(tag=tag, max_imag=mi)


def _site_weights(vector: np.ndarray) -> np.ndarray:
    """Per-site Majorana weight |v_{j,A}|^2 + |v_{j,B}|^2 of a unit vector."""
    mags = np.abs(vector) ** 2
    return mags[0::2] + mags[1::2]


def _edge_localized_basis(vectors: np.ndarray) -> np.ndarray:
    """Re-gauge a degenerate zero subspace to concentrate modes on the edges.

    Inside a numerically degenerate cluster any basis of the span is an
    eigenbasis, so the solver's choice is arbitrary and may smear the two
    edge modes across both ends.  Orthonormalize the span and rotate so the
    first column maximizes the site-1 weight and the second maximizes the
    site-N weight within the remainder; extra columns stay as they fall.
    """
    q, _ = np.linalg.qr(vectors)

    def rotate_top(block: np.ndarray, rows: list[int]) -> np.ndarray:
        gram = block[rows, :].conj().T @ block[rows, :]
        _, u = np.linalg.eigh(gram)
        return block @ u[:, ::-1]  # descending edge weight

    n2 = q.shape[0]
    q = rotate_top(q, [0, 1])
    if q.shape[1] > 1:
        q[:, 1:] = rotate_top(q[:, 1:], [n2 - 2, n2 - 1])
    return q


def _fit_localization_length(weights: np.ndarray) -> float | None:
    """Exponential decay length (in sites) from the dominant edge inward.

    Fits log amplitude against distance from the stronger edge over the
    near half of the chain, dropping sites whose weight is below the floor.
    Returns None for an increasing or poor fit (R^2 < 0.9).
    """
    n = weights.shape[0]
    half = (n + 1) // 2
    if weights[0] >= weights[-1]:
        window = weights[:half]
    else:
        window = weights[::-1][:half]
    dist = np.arange(half, dtype=float)
    keep = window > _FIT_WEIGHT_FLOOR
    if keep.sum() < 3:
        return None
    x = dist[keep]
    y = 0.5 * np.log(window[keep])  # log amplitude
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return None
    r2 = 1.0 - ss_res / ss_tot
    if slope >= 0.0 or r2 < _FIT_MIN_R2:
        return None
    return -1.0 / slope


def detect_zero_modes(
    spec: ChainSpec, zero_tolerance: float = ZERO_RTOL
) -> ZeroModeReport:
    """Diagonalize in the Majorana basis and report (near-)zero modes.

    An eigenvalue counts as zero when |lambda| <= zero_tolerance * max(1,
    ||M||_F).  Edge weights use the right eigenvectors; localization lengths
    are fitted only for modes that are not pinned exactly to an edge.
    """
    if zero_tolerance <= 0:
        raise InvalidParameterError("zero_tolerance must be > 0")
    mm = to_majorana_basis(build_bdg(spec))
    spectrum = eig(mm.entries, want_vectors=True)
    cut = zero_tolerance * max(1.0, spectrum.matrix_norm)
    zero_idx = np.flatnonzero(np.abs(spectrum.eigenvalues) <= cut)

    vectors = spectrum.eigenvectors[:, zero_idx]
    if zero_idx.size >= 2:
        lam = spectrum.eigenvalues[zero_idx]
        spread = float(np.abs(lam[:, None] - lam[None, :]).max())
        if spread <= RESIDUAL_RTOL * max(1.0, spectrum.matrix_norm):
            vectors = _edge_localized_basis(vectors)

    eigenvalues = []
    weights = []
    lengths: list[float | None] = []
    for col, i in enumerate(zero_idx):
        vec = vectors[:, col]
        site_w = _site_weights(vec)
        w_left, w_right = float(site_w[0]), float(site_w[-1])
        eigenvalues.append(complex(spectrum.eigenvalues[i]))
        weights.append((w_left, w_right))
        if max(w_left, w_right) >= 1.0 - 1e-10:
            lengths.append(None)  # exactly edge-localized, nothing to fit
        else:
            lengths.append(_fit_localization_length(site_w))
    return ZeroModeReport(
        zero_count=len(eigenvalues),
        zero_eigenvalues=tuple(eigenvalues),
        edge_weights=tuple(weights),
        localization_lengths=tuple(lengths),
    )


def find_critical(
    spec_family: Callable[[float], ChainSpec],
    theta_range: tuple[float, float],
    reality_tolerance: float = REALITY_RTOL,
    prescan_points: int = 64,
    theta_resolution: float = 1e-6,
) -> float | None:
    """Bisect the parameter value where the spectrum stops being complex.

    The indicator is f(theta) = max|Im lambda| - tol * max(1, ||M||_F).  A
    prescan over ``prescan_points`` equispaced values must find at most one
    sign change (the caller picks a range where that holds); none means the
    whole range is on one side and None is returned, while several raise
    :class:`AmbiguousCrossingError` listing the offending brackets.
    """
    lo, hi = float(theta_range[0]), float(theta_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise InvalidParameterError("theta_range must be a finite (lo, hi) with lo < hi")
    if reality_tolerance <= 0:
        raise InvalidParameterError("reality_tolerance must be > 0")
    if prescan_points < 2:
        raise InvalidParameterError("prescan needs at least 2 points")

    def indicator(theta: float) -> float:
        spectrum = eig(build_bdg(spec_family(theta)).entries)
        return max_imag(spectrum) - reality_tolerance * max(1.0, spectrum.matrix_norm)

    thetas = np.linspace(lo, hi, prescan_points)
    with ThreadPoolExecutor(max_workers=4) as pool:
        values = list(pool.map(indicator, thetas))  # merged back in grid order
    complex_side = [v > 0.0 for v in values]
    brackets = [
        (float(thetas[i]), float(thetas[i + 1]))
        for i in range(prescan_points - 1)
        if complex_side[i] != complex_side[i + 1]
    ]
    if not brackets:
        return None
    if len(brackets) > 1:
        raise AmbiguousCrossingError(
            f"indicator changes sign {len(brackets)} times on "
            f"[{lo:g}, {hi:g}]; shrink the range",
            brackets=brackets,
        )

    a, b = brackets[0]
    side_a = indicator(a) > 0.0
    while b - a > theta_resolution:
        mid = 0.5 * (a + b)
        if (indicator(mid) > 0.0) == side_a:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)
