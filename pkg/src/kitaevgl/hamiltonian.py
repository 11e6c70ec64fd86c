"""Single-particle matrices and the momentum-space dispersion.

The second-quantized chain Hamiltonian is

    H = sum_{j<N} ( -T a+_j a_{j+1} + delta a_j a_{j+1} + h.c. )
        - mu sum_j (a+_j a_j - 1/2) + i sum_j g_j a+_j a_j

and is represented here as H = (1/2) Psi+ M Psi + E0 with the Nambu vector
Psi = (a_1..a_N, a+_1..a+_N) and the purely imaginary scalar
E0 = (i/2) sum_j g_j.  In this convention the eigenvalues of M are the
excitation energies; for the periodic Hermitian chain they reproduce
-/+ E_k = -/+ sqrt((2 T cos k + mu)^2 + 4 delta^2 sin^2 k) exactly.

Sign conventions, fixed once:
  * particle block      h[j, j] = -mu + i g_j,   h[j, j+1] = h[j+1, j] = -T
  * pairing (annihilation-annihilation) block  C[j, j+1] = +delta,
    C[j+1, j] = -delta; the creation-creation block is -C
  * hole block          -h^T

The Majorana basis interleaves two flavors per site,
(y_{1,A}, y_{1,B}, ..., y_{N,A}, y_{N,B}), normalized so the change of
basis is unitary: y_{j,A} = (a+_j + a_j)/sqrt(2),
y_{j,B} = i (a+_j - a_j)/sqrt(2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBasisError, InvalidParameterError
from .model import ChainSpec

__all__ = [
    "Basis",
    "BdgMatrix",
    "build_bdg",
    "majorana_transform",
    "to_majorana_basis",
    "detect_unpaired_majoranas",
    "dispersion",
    "bulk_gap",
]


class Basis(enum.Enum):
    FERMION_NAMBU = "FermionNambu"
    MAJORANA = "Majorana"


@dataclass(frozen=True)
class BdgMatrix:
    """Dense 2N x 2N single-particle matrix with its basis convention."""

    entries: np.ndarray
    basis: Basis
    scalar_offset: complex
    source_spec: ChainSpec

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def dump_text(self) -> str:
        """Debug/golden-file dump: header line plus comma-separated re+imj rows."""
        lines = [f"# basis={self.basis.value} n={self.dimension}"]
        for row in self.entries:
            lines.append(
                ",".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row)
            )
        return "\n".join(lines) + "\n"


def build_bdg(spec: ChainSpec, periodic: bool = False) -> BdgMatrix:
    """Build the chain's matrix in the fermion Nambu basis.

    ``periodic=True`` adds the wrap-around hopping and pairing bond (N -> 1)
    used by the dispersion cross-check; it requires N >= 3 so the wrap bond
    is distinct from the open-chain bonds.
    """
    n = spec.n_sites
    if periodic and n < 3:
        raise InvalidParameterError("periodic chain needs n_sites >= 3")
    g = spec.profile.as_array()
    t, d, mu = spec.hopping, spec.pairing, spec.chemical_potential

    h = np.zeros((n, n), dtype=complex)
    c = np.zeros((n, n), dtype=complex)  # annihilation-annihilation block
    np.fill_diagonal(h, -mu + 1j * g)
    idx = np.arange(n - 1)
    h[idx, idx + 1] = -t
    h[idx + 1, idx] = -t
    c[idx, idx + 1] = +d
    c[idx + 1, idx] = -d
    if periodic:
        h[n - 1, 0] += -t
        h[0, n - 1] += -t
        c[n - 1, 0] += +d
        c[0, n - 1] += -d

    m = np.block([[h, -c], [c, -h.T]])
    return BdgMatrix(
        entries=m,
        basis=Basis.FERMION_NAMBU,
        scalar_offset=0.5j * spec.profile.total,
        source_spec=spec,
    )


def majorana_transform(n_sites: int) -> np.ndarray:
    """Unitary mapping the Nambu vector to interleaved Majorana components."""
    omega = np.zeros((2 * n_sites, 2 * n_sites), dtype=complex)
    s = 1.0 / math.sqrt(2.0)
    for j in range(n_sites):
        omega[2 * j, j] = s
        omega[2 * j, n_sites + j] = s
        omega[2 * j + 1, j] = -1j * s
        omega[2 * j + 1, n_sites + j] = 1j * s
    return omega


def to_majorana_basis(m: BdgMatrix) -> BdgMatrix:
    """Similarity transform into the Majorana basis (spectrum preserved).

    The result is antisymmetric; when site 1 and site N carry no gain/loss
    and mu = 0, delta = T, the rows and columns of y_{1,A} and y_{N,B}
    vanish identically, exposing the two unpaired edge operators.
    """
    if m.basis is not Basis.FERMION_NAMBU:
        raise InvalidBasisError(f"matrix already in basis {m.basis.value}")
    omega = majorana_transform(m.source_spec.n_sites)
    entries = omega @ m.entries @ omega.conj().T
    return BdgMatrix(
        entries=entries,
        basis=Basis.MAJORANA,
        scalar_offset=m.scalar_offset,
        source_spec=m.source_spec,
    )


def detect_unpaired_majoranas(m: BdgMatrix, tolerance: float = 1e-14) -> list[int]:
    """Indices whose row and column both vanish in the Majorana basis.

    Each such index is an operator absent from the Hamiltonian, hence an
    exact zero mode.  Index 2j is flavor A of site j+1, index 2j+1 flavor B.
    """
    if m.basis is not Basis.MAJORANA:
        raise InvalidBasisError("unpaired-operator detection needs the Majorana basis")
    scale = max(1.0, float(np.linalg.norm(m.entries)))
    absent = []
    for p in range(m.dimension):
        if (
            np.abs(m.entries[p, :]).max() <= tolerance * scale
            and np.abs(m.entries[:, p]).max() <= tolerance * scale
        ):
            absent.append(p)
    return absent


def dispersion(k: float, hopping: float, mu: float, delta: float) -> tuple[complex, complex]:
    """Bulk excitation pair -/+ E_k of the Hermitian infinite chain."""
    for name, value in (("k", k), ("hopping", hopping), ("mu", mu), ("delta", delta)):
        if not math.isfinite(value):
            raise InvalidParameterError(f"{name} must be finite")
    e = math.sqrt(
        (2.0 * hopping * math.cos(k) + mu) ** 2
        + 4.0 * delta**2 * math.sin(k) ** 2
    )
    return (complex(-e), complex(+e))


def bulk_gap(hopping: float, mu: float, delta: float) -> float:
    """Minimum of |E_k| over the Brillouin zone, from the analytic extrema.

    The radicand (2T cos k + mu)^2 + 4 delta^2 sin^2 k is stationary at
    k = 0, k = pi and, when delta^2 != T^2, at the interior point
    cos k = T mu / (2 (delta^2 - T^2)) if that lies in [-1, 1].
    Vanishes exactly at the topological transition mu = -/+ 2T.
    """
    t = hopping
    candidates = [(2.0 * t + mu) ** 2, (mu - 2.0 * t) ** 2]
    if delta**2 != t**2:
        ck = t * mu / (2.0 * (delta**2 - t**2))
        if -1.0 <= ck <= 1.0:
            candidates.append(
                (2.0 * t * ck + mu) ** 2 + 4.0 * delta**2 * (1.0 - ck**2)
            )
    return math.sqrt(max(0.0, min(candidates)))
