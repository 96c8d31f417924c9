"""Pure states and density matrices over n qubit tensor factors.

Site 0 is the leftmost tensor factor and the most significant bit of a
computational-basis index: |q0 q1 ... q_{n-1}> lives at index
sum_i q_i * 2^(n-1-i).  Letter labels map as A=0, B=1, C=2, D=3.

A subsystem set is any iterable of distinct site indices; it is
canonicalized to a sorted tuple.  All types are immutable after
construction and every operation is a pure function, so concurrent use
is safe.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InputError,
    NotHermitian,
    NotUnitary,
    ZeroVector,
)

NORM_TOL = 1e-9
HERMITICITY_TOL = 1e-9
PSD_EIGENVALUE_FLOOR = -1e-9
SPECTRAL_TOL = 1e-8
SQRT_CLAMP_FLOOR = -1e-12


def clamped_sqrt(x: float) -> float:
    """sqrt with tiny negative rounding dust (>= -1e-12) clamped to 0."""
    if x < 0.0:
        if x < SQRT_CLAMP_FLOOR:
            raise ValueError(f"sqrt argument {x} below clamp floor {SQRT_CLAMP_FLOOR}")
        return 0.0
    return float(np.sqrt(x))


def sites_tuple(sites: Union[int, Iterable[int]], num_sites: int) -> tuple[int, ...]:
    """Canonicalize a subsystem set to a sorted tuple of distinct site indices."""
    if isinstance(sites, (int, np.integer)):
        sites = (int(sites),)
    out = tuple(sorted(int(s) for s in sites))
    if not out:
        raise IndexOutOfRange("subsystem set must be non-empty")
    if len(set(out)) != len(out):
        raise IndexOutOfRange(f"duplicate site indices in {out}")
    if out[0] < 0 or out[-1] >= num_sites:
        raise IndexOutOfRange(f"sites {out} outside [0, {num_sites})")
    return out


def _frozen_array(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over num_sites qubit factors."""

    amplitudes: np.ndarray
    num_sites: int

    def __post_init__(self):
        amps = _frozen_array(self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)
        n = self.num_sites
        if n < 1:
            raise DimensionMismatch(f"num_sites must be >= 1, got {n}")
        if amps.ndim != 1 or amps.size != 2**n:
            raise DimensionMismatch(
                f"amplitude vector of length {amps.size} does not match {n} qubits"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise InputError(f"state not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")

    @property
    def dim(self) -> int:
        return 2**self.num_sites

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis of size 2 per site."""
        return self.amplitudes.reshape((2,) * self.num_sites)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix with qubit factors."""

    entries: np.ndarray
    num_sites: int

    def __post_init__(self):
        m = _frozen_array(self.entries)
        object.__setattr__(self, "entries", m)
        n = self.num_sites
        if n < 1:
            raise DimensionMismatch(f"num_sites must be >= 1, got {n}")
        if m.ndim != 2 or m.shape != (2**n, 2**n):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match {n} qubits")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > HERMITICITY_TOL:
            raise NotHermitian(f"Hermiticity residual {herm:.3e} exceeds {HERMITICITY_TOL}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > NORM_TOL:
            raise InputError(f"trace {tr} not 1 within {NORM_TOL}")
        low = float(np.linalg.eigvalsh(m)[0])
        if low < PSD_EIGENVALUE_FLOOR:
            raise InputError(f"eigenvalue {low:.3e} below PSD floor {PSD_EIGENVALUE_FLOOR}")

    @property
    def dim(self) -> int:
        return 2**self.num_sites


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Squared Schmidt coefficients of a bipartite cut, descending."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if any(c < -NORM_TOL for c in coeffs):
            raise InputError(f"negative Schmidt weight in {coeffs}")
        if abs(sum(coeffs) - 1.0) > NORM_TOL:
            raise InputError(f"Schmidt weights sum to {sum(coeffs)}, expected 1")

    @property
    def rank(self) -> int:
        return sum(1 for c in self.coefficients if c > 1e-10)


def make_pure(amplitudes: Sequence[complex], num_sites: int) -> PureState:
    """Build a PureState, rescaling the input vector to unit norm.

    Raises DimensionMismatch if the length is not 2**num_sites and
    ZeroVector if the norm is below 1e-12.
    """
    amps = np.asarray(amplitudes, dtype=complex).ravel()
    if num_sites < 1 or amps.size != 2**num_sites:
        raise DimensionMismatch(
            f"vector of length {amps.size} does not match {num_sites} qubits"
        )
    norm = float(np.linalg.norm(amps))
    if norm < 1e-12:
        raise ZeroVector("cannot normalize a (near-)zero vector")
    return PureState(amps / norm, num_sites)


def density_of(psi: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi| as a DensityMatrix."""
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.num_sites)


def partial_trace(rho: DensityMatrix, keep: Union[int, Iterable[int]]) -> DensityMatrix:
    """Trace out every site not in `keep`; result has num_sites = len(keep)."""
    n = rho.num_sites
    keep_t = sites_tuple(keep, n)
    drop = [s for s in range(n) if s not in keep_t]
    if not drop:
        return DensityMatrix(rho.entries.copy(), n)
    t = rho.entries.reshape((2,) * (2 * n))
    remaining = n
    for site in sorted(drop, reverse=True):
        t = np.trace(t, axis1=site, axis2=site + remaining)
        remaining -= 1
    dim = 2 ** len(keep_t)
    return DensityMatrix(t.reshape(dim, dim), len(keep_t))


def reduced_density_pure(psi: PureState, keep: Union[int, Iterable[int]]) -> np.ndarray:
    """Reduced density matrix of a pure state, materialized from the
    amplitude tensor (fast path; agrees with partial_trace of the full
    projector to better than 1e-12)."""
    n = psi.num_sites
    keep_t = sites_tuple(keep, n)
    other = [s for s in range(n) if s not in keep_t]
    m = psi.tensor().transpose(list(keep_t) + other).reshape(2 ** len(keep_t), -1)
    return m @ m.conj().T


def _amplitude_matrix(psi: PureState, side_a: tuple[int, ...]) -> np.ndarray:
    """Amplitudes as a (2^|A|, 2^|Abar|) matrix, rows indexed by side A."""
    n = psi.num_sites
    other = [s for s in range(n) if s not in side_a]
    return psi.tensor().transpose(list(side_a) + other).reshape(2 ** len(side_a), -1)


def schmidt_weights(psi: PureState, side_a: Union[int, Iterable[int]]) -> np.ndarray:
    """Squared Schmidt coefficients across the cut side_a | rest, descending.

    Computed as squared singular values of the amplitude matrix, which
    keeps structurally-zero coefficients at exactly zero.
    """
    n = psi.num_sites
    side = sites_tuple(side_a, n)
    if len(side) >= n:
        raise IndexOutOfRange("side A must be a proper subset of the sites")
    sing = np.linalg.svd(_amplitude_matrix(psi, side), compute_uv=False)
    return np.clip(sing, 0.0, None) ** 2


def schmidt_spectrum(psi: PureState, side_a: Union[int, Iterable[int]]) -> SchmidtSpectrum:
    """Schmidt spectrum of the cut side_a | rest (eigenvalues of the
    reduced matrix on side A, descending)."""
    return SchmidtSpectrum(tuple(schmidt_weights(psi, side_a)))


def partial_transpose(rho: DensityMatrix, site: int) -> np.ndarray:
    """Transpose of one tensor factor of rho.

    Returns a plain Hermitian unit-trace matrix that may fail positive
    semidefiniteness; applying the same transpose twice restores rho.
    """
    return partial_transpose_sites(rho.entries, (site,), rho.num_sites)


def partial_transpose_sites(
    matrix: np.ndarray, sites: Union[int, Iterable[int]], num_sites: int
) -> np.ndarray:
    """Transpose the tensor factors listed in `sites` of a 2^n x 2^n matrix."""
    sites_t = sites_tuple(sites, num_sites)
    t = matrix.reshape((2,) * (2 * num_sites))
    for s in sites_t:
        t = t.swapaxes(s, s + num_sites)
    return np.ascontiguousarray(t).reshape(2**num_sites, 2**num_sites)


def purity(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """Tr(rho^2), real."""
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return float(np.real(np.einsum("ij,ji->", m, m)))


def hermitian_eigenvalues(m: Union[DensityMatrix, np.ndarray]) -> np.ndarray:
    """Real spectrum of a Hermitian matrix, ascending.

    Raises NotHermitian if the Hermiticity residual exceeds 1e-8.
    """
    a = m.entries if isinstance(m, DensityMatrix) else np.asarray(m, dtype=complex)
    resid = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if resid > SPECTRAL_TOL:
        raise NotHermitian(f"Hermiticity residual {resid:.3e} exceeds {SPECTRAL_TOL}")
    return np.linalg.eigvalsh(a)


def hermitian_eigensystem(
    m: Union[DensityMatrix, np.ndarray]
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix."""
    a = m.entries if isinstance(m, DensityMatrix) else np.asarray(m, dtype=complex)
    resid = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if resid > SPECTRAL_TOL:
        raise NotHermitian(f"Hermiticity residual {resid:.3e} exceeds {SPECTRAL_TOL}")
    return np.linalg.eigh(a)


def apply_local_unitary(psi: PureState, site: int, u: np.ndarray) -> PureState:
    """Apply a 2x2 unitary to one site of a pure state."""
    n = psi.num_sites
    if not 0 <= site < n:
        raise IndexOutOfRange(f"site {site} outside [0, {n})")
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise DimensionMismatch(f"local unitary must be 2x2, got {u.shape}")
    resid = float(np.max(np.abs(u.conj().T @ u - np.eye(2))))
    if resid > NORM_TOL:
        raise NotUnitary(f"unitarity residual {resid:.3e} exceeds {NORM_TOL}")
    t = np.tensordot(u, psi.tensor(), axes=([1], [site]))
    t = np.moveaxis(t, 0, site)
    return PureState(t.reshape(-1), n)


def state_to_json(state: Union[PureState, DensityMatrix]) -> str:
    """Serialize a state to the interchange JSON format."""
    if isinstance(state, PureState):
        payload = {
            "kind": "pure",
            "num_sites": state.num_sites,
            "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
        }
    elif isinstance(state, DensityMatrix):
        payload = {
            "kind": "density",
            "num_sites": state.num_sites,
            "matrix": [
                [[float(e.real), float(e.imag)] for e in row] for row in state.entries
            ],
        }
    else:
        raise InputError(f"cannot serialize {type(state).__name__}")
    return json.dumps(payload)


def state_from_json(text: str) -> Union[PureState, DensityMatrix]:
    """Parse the interchange JSON format, rejecting out-of-tolerance input."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "kind" not in payload:
        raise InputError("state JSON must be an object with a 'kind' field")
    kind = payload.get("kind")
    try:
        n = int(payload["num_sites"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("missing or non-integer 'num_sites'") from exc
    try:
        if kind == "pure":
            amps = np.array(
                [complex(re, im) for re, im in payload["amplitudes"]], dtype=complex
            )
            return PureState(amps, n)
        if kind == "density":
            m = np.array(
                [[complex(re, im) for re, im in row] for row in payload["matrix"]],
                dtype=complex,
            )
            return DensityMatrix(m, n)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed state payload: {exc}") from exc
    raise InputError(f"unknown state kind {kind!r}")


def load_state(path) -> Union[PureState, DensityMatrix]:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_json(fh.read())


def save_state(state: Union[PureState, DensityMatrix], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(state_to_json(state))
