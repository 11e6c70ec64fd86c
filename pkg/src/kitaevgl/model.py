"""Chain specification and gain/loss profiles.

The chain is a spinless p-wave superconducting wire of ``n_sites`` sites with
uniform hopping ``T``, pairing ``delta >= 0``, chemical potential ``mu`` and a
site-dependent imaginary on-site potential ``i * g_j`` (g_j > 0 is gain,
g_j < 0 is loss).  All types are immutable after construction and safe to
share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidSiteError, InvalidSizeError, InvalidSpecError

__all__ = [
    "GainProfile",
    "ChainSpec",
    "zero_profile",
    "alternating_profile",
    "two_impurity_profile",
    "random_balanced_profile",
    "is_pt_symmetric_nonhermitian_part",
]

#: |sum g| <= BALANCE_RTOL * max(1, sum |g|) counts as balanced.
BALANCE_RTOL = 1e-12


@dataclass(frozen=True)
class GainProfile:
    """Per-site gain/loss strengths g_1 .. g_N (1-indexed in the physics)."""

    strengths: tuple[float, ...]

    def __post_init__(self):
        strengths = tuple(float(g) for g in self.strengths)
        if len(strengths) < 2:
            raise InvalidSizeError("profile needs at least 2 sites")
        if not all(math.isfinite(g) for g in strengths):
            raise InvalidSpecError("profile strengths must be finite")
        object.__setattr__(self, "strengths", strengths)

    @property
    def n_sites(self) -> int:
        return len(self.strengths)

    @property
    def total(self) -> float:
        """Signed net gain, sum_j g_j (exact compensated sum)."""
        return math.fsum(self.strengths)

    @property
    def is_balanced(self) -> bool:
        scale = max(1.0, math.fsum(abs(g) for g in self.strengths))
        return abs(self.total) <= BALANCE_RTOL * scale

    @property
    def has_free_edges(self) -> bool:
        return self.strengths[0] == 0.0 and self.strengths[-1] == 0.0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.strengths, dtype=float)


def zero_profile(n_sites: int) -> GainProfile:
    """Hermitian limit: no gain or loss anywhere."""
    if n_sites < 2:
        raise InvalidSizeError("n_sites must be >= 2")
    return GainProfile((0.0,) * n_sites)


def alternating_profile(n_sites: int, g0: float) -> GainProfile:
    """Alternating interior gain/loss: g_j = (-1)^j * g0 for 2 <= j <= N-1.

    The edge sites carry no gain or loss.  For even N the result is balanced
    and odd under reflection; for odd N the interior sum is g0 and the
    profile is unbalanced (flagged by ``is_balanced``, not rejected).
    """
    if n_sites < 4:
        raise InvalidSizeError(
            f"alternating profile needs n_sites >= 4, got {n_sites}"
        )
    g = [0.0] * n_sites
    for j in range(2, n_sites):  # 1-indexed interior sites 2 .. N-1
        g[j - 1] = (-1.0) ** j * g0
    return GainProfile(tuple(g))


def two_impurity_profile(
    n_sites: int, g0: float, gain_site: int, loss_site: int
) -> GainProfile:
    """One gain impurity and one loss impurity, balanced by construction.

    Sites are 1-indexed and must lie strictly inside the chain.
    """
    for name, site in (("gain_site", gain_site), ("loss_site", loss_site)):
        if not 1 < site < n_sites:
            raise InvalidSiteError(
                f"{name}={site} must lie strictly between 1 and {n_sites}"
            )
    if gain_site == loss_site:
        raise InvalidSiteError("gain_site and loss_site must differ")
    g = [0.0] * n_sites
    g[gain_site - 1] = +float(g0)
    g[loss_site - 1] = -float(g0)
    return GainProfile(tuple(g))


def random_balanced_profile(n_sites: int, max_strength: float, seed: int) -> GainProfile:
    """Random interior strengths, shifted to exact zero net gain.

    Interior sites draw uniformly from [-max_strength, +max_strength] using
    numpy's seeded PCG64 stream (``numpy.random.default_rng``), then the
    interior mean is subtracted so the total vanishes to rounding.  Edges
    stay exactly zero.  The same seed reproduces the same profile bit for
    bit on every platform.
    """
    if n_sites < 4:
        raise InvalidSizeError("random balanced profile needs n_sites >= 4")
    if max_strength < 0:
        raise InvalidSpecError("max_strength must be >= 0")
    rng = np.random.default_rng(seed)
    interior = rng.uniform(-max_strength, max_strength, size=n_sites - 2)
    interior -= interior.mean()
    return GainProfile((0.0, *map(float, interior), 0.0))


def is_pt_symmetric_nonhermitian_part(
    profile: GainProfile, tolerance: float = 1e-12
) -> bool:
    """True iff the profile is odd under reflection: g_{N+1-j} = -g_j.

    Parity reflects the chain and time reversal conjugates the factor i in
    i * g_j n_j, so the non-Hermitian part is PT symmetric exactly when the
    profile is reflection-odd.
    """
    g = profile.strengths
    return all(abs(g[-1 - j] + g[j]) <= tolerance for j in range(len(g)))


@dataclass(frozen=True)
class ChainSpec:
    """Full model parameters for one chain."""

    n_sites: int
    hopping: float
    pairing: float
    chemical_potential: float
    profile: GainProfile = field(compare=True)

    def __post_init__(self):
        if self.n_sites < 2:
            raise InvalidSizeError("n_sites must be >= 2")
        for name in ("hopping", "pairing", "chemical_potential"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidSpecError(f"{name} must be finite")
        if self.pairing < 0:
            raise InvalidSpecError("pairing must be >= 0")
        if self.profile.n_sites != self.n_sites:
            raise InvalidSpecError(
                f"profile has {self.profile.n_sites} sites, spec has {self.n_sites}"
            )

    def with_(self, **changes) -> "ChainSpec":
        """Copy with fields replaced (validation re-runs)."""
        return replace(self, **changes)

    def to_json_dict(self) -> dict:
        return {
            "n_sites": self.n_sites,
            "hopping": self.hopping,
            "pairing": self.pairing,
            "chemical_potential": self.chemical_potential,
            "profile": list(self.profile.strengths),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ChainSpec":
        try:
            return cls(
                n_sites=int(doc["n_sites"]),
                hopping=float(doc["hopping"]),
                pairing=float(doc["pairing"]),
                chemical_potential=float(doc["chemical_potential"]),
                profile=GainProfile(tuple(float(g) for g in doc["profile"])),
            )
        except KeyError as exc:
            raise InvalidSpecError(f"chain spec document misses key {exc}") from exc
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidSpecError):
                raise
            raise InvalidSpecError(f"malformed chain spec document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"chain spec is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise InvalidSpecError("chain spec document must be a JSON object")
        return cls.from_json_dict(doc)
