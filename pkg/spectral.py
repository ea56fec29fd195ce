#!/usr/bin/env python3
"""
Spectral Module for the Scarf Hypersphere Verifier
Bound states of the quasi-radial Scarf I equation on S^{d+1}:
tridiagonal discretizations, a Sturm-bisection eigensolver, Richardson
extrapolation and the degeneracy audit

Schrodinger form:  -U'' + V(chi) U = eps U  on  chi in (-pi/2, pi/2)
    V = (b^2 + a(a+1))/cos^2 - b(2a+1) tan/cos,  a = channel + (d-2)/2
Exact levels:      eps_n = (a + n + 1)^2

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, solve_banded
from scipy.special import betainc

from constants import DEFAULT_CONFIG, SCHEMA_VERSION, SCHEME_DIRICHLET, SCHEME_GROUND_STATE, SPECTRAL_SCHEMES
from errors import ConvergenceFailure, NonNormalizable
from orthopoly import jacobi_values

SPECTRAL_DEFAULTS = DEFAULT_CONFIG["spectral"]


@dataclass(frozen=True)
class SpectralProblem:
    """One quasi-radial channel on S^{d+1} discretized with M interior points"""
    d: int = 2
    channel: int = 0
    b: float = 0.0
    M: int = SPECTRAL_DEFAULTS["grid"]
    scheme: str = SPECTRAL_DEFAULTS["scheme"]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"surface dimension parameter d must be >= 1 (d={self.d})")
        if self.channel < 0:
            raise ValueError(f"channel angular momentum must be >= 0 (channel={self.channel})")
        if not math.isfinite(self.b):
            raise ValueError("deformation b must be finite")
        if self.M < 2:
            raise ValueError(f"grid needs at least 2 interior points (M={self.M})")
        if self.scheme not in SPECTRAL_SCHEMES:
            raise ValueError(f"unknown scheme '{self.scheme}' (choose from {', '.join(SPECTRAL_SCHEMES)})")

    @property
    def a(self) -> float:
        return self.channel + (self.d - 2) / 2.0

    @property
    def alpha(self) -> float:
        return self.a - self.b + 0.5

    @property
    def beta(self) -> float:
        return self.a + self.b + 0.5

    @property
    def h(self) -> float:
        return math.pi / (self.M + 1)

    @property
    def ground_energy(self) -> float:
        return (self.a + 1.0) ** 2

    def check_normalizable(self):
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise NonNormalizable(
                f"b={self.b} leaves the integrable range for a={self.a} "
                f"(alpha={self.alpha:g}, beta={self.beta:g}, need both > -1)",
                alpha=self.alpha, beta=self.beta)

    def refined(self) -> "SpectralProblem":
        """Same problem with the step halved (M -> 2M+1)"""
        return replace(self, M=2 * self.M + 1)

    def interior_grid(self) -> np.ndarray:
        return -math.pi / 2 + self.h * np.arange(1, self.M + 1)

    def vertex_grid(self) -> np.ndarray:
        return -math.pi / 2 + self.h * np.arange(0, self.M + 2)


@dataclass(frozen=True)
class Tridiagonal:
    """Symmetric tridiagonal matrix, optionally tagged with the grid it lives on"""
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: Optional[np.ndarray] = None
    shift: float = 0.0
    scheme: str = SCHEME_DIRICHLET

    def __post_init__(self):
        diagonal = np.asarray(self.diagonal, dtype=float)
        off = np.asarray(self.off_diagonal, dtype=float)
        if diagonal.ndim != 1 or diagonal.size < 1:
            raise ValueError("diagonal must be a non-empty vector")
        if off.shape != (diagonal.size - 1,):
            raise ValueError(f"off-diagonal must have length {diagonal.size - 1}, got {off.size}")
        object.__setattr__(self, "diagonal", diagonal)
        object.__setattr__(self, "off_diagonal", off)

    @property
    def size(self) -> int:
        return self.diagonal.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)

    def gershgorin(self):
        radius = np.zeros_like(self.diagonal)
        radius[:-1] += np.abs(self.off_diagonal)
        radius[1:] += np.abs(self.off_diagonal)
        return float(np.min(self.diagonal - radius)), float(np.max(self.diagonal + radius))


@dataclass
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None      # row k belongs to eigenvalue k
    h: float = 0.0
    grid: Optional[np.ndarray] = None
    sturm_indices: List[int] = field(default_factory=list)

    @property
    def sturm_consistent(self) -> bool:
        return self.sturm_indices == list(range(len(self.eigenvalues)))

    @property
    def strictly_increasing(self) -> bool:
        return bool(np.all(np.diff(self.eigenvalues) > 0))


@dataclass
class ExtrapolatedSpectrum:
    coarse: Spectrum
    fine: Spectrum
    extrapolated: np.ndarray


# Potential and matrices

def scarf_potential(chi, a: float, b: float):
    """V_ScI(chi) = (b^2 + a(a+1))/cos^2 chi - b(2a+1) tan chi / cos chi"""
    chi = np.asarray(chi, dtype=float)
    c = np.cos(chi)
    return (b * b + a * (a + 1.0)) / (c * c) - b * (2.0 * a + 1.0) * np.sin(chi) / (c * c)


def build_hamiltonian(problem: SpectralProblem) -> Tridiagonal:
    """Central differences on the interior grid, Dirichlet at chi = +-pi/2"""
    problem.check_normalizable()
    grid = problem.interior_grid()
    inv_h2 = 1.0 / problem.h ** 2
    diagonal = 2.0 * inv_h2 + scarf_potential(grid, problem.a, problem.b)
    off = np.full(problem.M - 1, -inv_h2)
    return Tridiagonal(diagonal, off, grid=grid, scheme=SCHEME_DIRICHLET)


def ground_state_weight_cdf(chi, alpha: float, beta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Cumulative weight int_{-pi/2}^{chi} (1-s)^alpha (1+s)^beta ds, up to a constant factor.

    Returns (left, right) = (mass below chi, mass above chi); each side is
    accurate where it is small, so cell weights are differenced on the
    side that avoids cancellation.
    """
    half = 0.5 * (np.asarray(chi, dtype=float) + math.pi / 2)
    u = np.sin(half) ** 2
    one_minus_u = np.cos(half) ** 2
    left = betainc(beta + 1.0, alpha + 1.0, u)
    right = betainc(alpha + 1.0, beta + 1.0, one_minus_u)
    return left, right


def _segment_weights(start, stop, alpha: float, beta: float) -> np.ndarray:
    left_a, right_a = ground_state_weight_cdf(start, alpha, beta)
    left_b, right_b = ground_state_weight_cdf(stop, alpha, beta)
    midpoint = 0.5 * (np.asarray(start) + np.asarray(stop))
    return np.where(midpoint < 0.0, left_b - left_a, right_a - right_b)


def build_ground_state_hamiltonian(problem: SpectralProblem) -> Tridiagonal:
    """Factor U = w*y with w = F^-1 cos^{a+1} and discretize -(w^2 y')' = (eps - eps0) w^2 y.

    Vertex grid including both endpoints, stiffness from exact cell weights,
    lumped exact dual-cell weights as mass, symmetrized and shifted by
    eps0 = (a+1)^2. The constant vector is an exact null vector before
    the shift, so the ground level is reproduced on every grid.
    """
    problem.check_normalizable()
    h = problem.h
    alpha, beta = problem.alpha, problem.beta
    vertices = problem.vertex_grid()

    cells = _segment_weights(vertices[:-1], vertices[1:], alpha, beta)
    dual_start = np.concatenate(([vertices[0]], vertices[1:] - h / 2))
    dual_stop = np.concatenate((vertices[:-1] + h / 2, [vertices[-1]]))
    mass = _segment_weights(dual_start, dual_stop, alpha, beta)
    if np.any(mass <= 0.0) or np.any(cells <= 0.0):
        raise ConvergenceFailure("ground-state weights underflowed; use a coarser grid")

    stiffness_diag = np.zeros(vertices.size)
    stiffness_diag[:-1] += cells
    stiffness_diag[1:] += cells
    stiffness_diag /= h * h
    stiffness_off = -cells / (h * h)

    scale = 1.0 / np.sqrt(mass)
    diagonal = stiffness_diag * scale * scale + problem.ground_energy
    off = stiffness_off * scale[:-1] * scale[1:]
    return Tridiagonal(diagonal, off, grid=vertices, shift=problem.ground_energy,
                       scheme=SCHEME_GROUND_STATE)


def assemble(problem: SpectralProblem) -> Tridiagonal:
    if problem.scheme == SCHEME_GROUND_STATE:
        return build_ground_state_hamiltonian(problem)
    return build_hamiltonian(problem)


# Eigensolver

def _pivmin(T: Tridiagonal) -> float:
    largest = max(float(np.max(np.abs(T.off_diagonal) ** 2)) if T.off_diagonal.size else 0.0, 1.0)
    return np.finfo(float).tiny * largest


def sturm_count(T: Tridiagonal, x: float) -> int:
    """Number of eigenvalues of T strictly below x (negative pivots of T - x I)"""
    diagonal = T.diagonal.tolist()
    off_sq = (T.off_diagonal ** 2).tolist()
    pivmin = _pivmin(T)
    count = 0
    q = diagonal[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(diagonal)):
        q = diagonal[i] - x - off_sq[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def _bisect(T: Tridiagonal, k: int, lo: float, upper_limit: float,
            rel_tol: float, max_iter: int):
    """k-th eigenvalue (0-based) from a lower bracket with sturm_count(lo) <= k"""
    step = max(1.0, abs(lo))
    hi = lo + step
    while sturm_count(T, hi) <= k:
        if hi >= upper_limit:
            raise ConvergenceFailure(f"could not bracket eigenvalue {k}")
        step *= 2.0
        hi = min(lo + step, upper_limit)

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * max(1.0, abs(mid)) or mid <= lo or mid >= hi:
            return lo, hi
        if sturm_count(T, mid) <= k:
            lo = mid
        else:
            hi = mid
    raise ConvergenceFailure(f"bisection for eigenvalue {k} exceeded {max_iter} iterations")


def _inverse_iteration(T: Tridiagonal, eigenvalue: float, found: List[np.ndarray],
                       seed: int, iterations: int = 2) -> np.ndarray:
    n = T.size
    banded = np.zeros((3, n))
    banded[0, 1:] = T.off_diagonal
    banded[2, :-1] = T.off_diagonal
    shift = eigenvalue
    vector = np.random.default_rng(seed).standard_normal(n)
    for _ in range(iterations):
        banded[1, :] = T.diagonal - shift
        try:
            vector = solve_banded((1, 1), banded, vector)
        except (LinAlgError, ValueError):
            shift = eigenvalue + 1e-10 * max(1.0, abs(eigenvalue))
            banded[1, :] = T.diagonal - shift
            vector = solve_banded((1, 1), banded, vector)
        for previous in found:
            vector = vector - np.dot(previous, vector) * previous
        norm = np.linalg.norm(vector)
        if not np.isfinite(norm) or norm == 0.0:
            raise ConvergenceFailure(f"inverse iteration broke down at eigenvalue {eigenvalue:g}")
        vector = vector / norm

    significant = np.flatnonzero(np.abs(vector) > 1e-8 * np.max(np.abs(vector)))
    if significant.size and vector[significant[0]] < 0:
        vector = -vector
    return vector


def eigen_solve(T: Tridiagonal, k: int, with_vectors: bool = True,
                rel_tol: float = SPECTRAL_DEFAULTS["bisection_rel_tol"],
                max_iter: int = SPECTRAL_DEFAULTS["bisection_max_iter"]) -> Spectrum:
    """k lowest eigenvalues by Sturm bisection, eigenvectors by inverse iteration"""
    if not 1 <= k <= T.size:
        raise ValueError(f"requested {k} eigenvalues from a matrix of size {T.size}")
    if not (np.all(np.isfinite(T.diagonal)) and np.all(np.isfinite(T.off_diagonal))):
        raise ConvergenceFailure("matrix contains non-finite entries")

    lower, upper = T.gershgorin()
    lower -= 1.0
    upper += 1.0
    eigenvalues, brackets = [], []
    lo = lower
    for index in range(k):
        lo, hi = _bisect(T, index, lo, upper, rel_tol, max_iter)
        eigenvalues.append(0.5 * (lo + hi))
        brackets.append(lo)

    vectors = None
    if with_vectors:
        found: List[np.ndarray] = []
        for index, value in enumerate(eigenvalues):
            found.append(_inverse_iteration(T, value, found, seed=index))
        vectors = np.vstack(found)

    sturm_indices = [sturm_count(T, lo) for lo in brackets]
    h = float(T.grid[1] - T.grid[0]) if T.grid is not None and T.grid.size > 1 else 0.0
    return Spectrum(np.asarray(eigenvalues), vectors, h=h, grid=T.grid, sturm_indices=sturm_indices)


# Extrapolation and exact references

def richardson(coarse, fine):
    """(4 eps_{h/2} - eps_h) / 3, cancelling the O(h^2) term"""
    return (4.0 * np.asarray(fine, dtype=float) - np.asarray(coarse, dtype=float)) / 3.0


def solve_extrapolated(problem: SpectralProblem, count: int,
                       with_vectors: bool = False) -> ExtrapolatedSpectrum:
    coarse = eigen_solve(assemble(problem), count, with_vectors=with_vectors)
    fine = eigen_solve(assemble(problem.refined()), count, with_vectors=with_vectors)
    return ExtrapolatedSpectrum(coarse, fine, richardson(coarse.eigenvalues, fine.eigenvalues))


def exact_eigenvalue(d: int, channel: int, n: int) -> float:
    """(a + n + 1)^2 with a = channel + (d-2)/2"""
    a = channel + (d - 2) / 2.0
    return (a + n + 1.0) ** 2


def level_energy(d: int, K: int) -> float:
    """K(K+d) + d^2/4, the Laplace-Beltrami level on S^{d+1} shifted to Schrodinger form"""
    return K * (K + d) + d * d / 4.0


def _comb_or_zero(top: int, bottom: int) -> int:
    return math.comb(top, bottom) if top >= 0 else 0


def harmonic_multiplicity(d: int, m: int) -> int:
    """Dimension of degree-m spherical harmonics on S^d"""
    if m < 0:
        return 0
    return _comb_or_zero(m + d, d) - _comb_or_zero(m + d - 2, d)


def eigenvector_node_count(vector, rel_floor: float = 1e-10) -> int:
    """Sign changes, ignoring entries below rel_floor * max|vector|"""
    vector = np.asarray(vector, dtype=float)
    significant = vector[np.abs(vector) > rel_floor * np.max(np.abs(vector))]
    return int(np.count_nonzero(np.signbit(significant[1:]) != np.signbit(significant[:-1])))


def reference_vector(problem: SpectralProblem, n: int) -> np.ndarray:
    """Analytic level-n state sampled in the same coordinates as the solver's eigenvectors"""
    alpha, beta = problem.alpha, problem.beta
    if problem.scheme == SCHEME_GROUND_STATE:
        vertices = problem.vertex_grid()
        h = problem.h
        dual_start = np.concatenate(([vertices[0]], vertices[1:] - h / 2))
        dual_stop = np.concatenate((vertices[:-1] + h / 2, [vertices[-1]]))
        mass = _segment_weights(dual_start, dual_stop, alpha, beta)
        s = np.clip(np.sin(vertices), -1.0, 1.0)
        vector = np.sqrt(mass) * jacobi_values(n, alpha, beta, s)
    else:
        chi = problem.interior_grid()
        s = np.sin(chi)
        c = np.cos(chi)
        rescale = np.exp(problem.b * np.arcsinh(np.tan(chi)))
        vector = rescale * c ** (problem.a + 1.0) * jacobi_values(n, alpha, beta, s)
    return vector / np.linalg.norm(vector)


def eigenvector_overlap(problem: SpectralProblem, spectrum: Spectrum, n: int) -> float:
    """|<computed, analytic>| for level n, both unit-normalized"""
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum was computed without eigenvectors")
    return float(abs(np.dot(spectrum.eigenvectors[n], reference_vector(problem, n))))


# Degeneracy audit

def _audit_channel(d: int, K: int, channel: int, b: float, M: int, scheme: str, tol: float) -> dict:
    n = K - channel
    problem = SpectralProblem(d=d, channel=channel, b=b, M=M, scheme=scheme)
    entry = {
        "channel": channel,
        "node_index": n,
        "a": problem.a,
        "multiplicity": harmonic_multiplicity(d, channel),
    }
    try:
        result = solve_extrapolated(problem, n + 1)
    except NonNormalizable as e:
        entry.update({"status": "non_normalizable", "error": str(e), "present": False})
        return entry
    expected = level_energy(d, K)
    found = float(result.extrapolated[n])
    deviation = abs(found - expected) / max(1.0, expected)
    entry.update({
        "status": "solved",
        "eigenvalue": found,
        "eigenvalue_raw": float(result.fine.eigenvalues[n]),
        "expected": expected,
        "relative_deviation": deviation,
        "present": deviation <= tol,
        "sturm_consistent": result.coarse.sturm_consistent and result.fine.sturm_consistent,
    })
    return entry


def degeneracy_audit(N: int, d: int = 2, b: float = 0.0,
                     M: int = SPECTRAL_DEFAULTS["grid"],
                     tol: float = SPECTRAL_DEFAULTS["audit_tolerance"],
                     scheme: str = SPECTRAL_DEFAULTS["scheme"],
                     max_workers: int = SPECTRAL_DEFAULTS["max_workers"],
                     progress: Optional[Callable[[str], None]] = None) -> dict:
    """Confirm the level K = N-1 of S^{d+1} in every channel 0..K.

    For d = 2 the level is eps = N^2 and the channels are l = 0..N-1 with
    multiplicities 2l+1 summing to N^2.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1 (N={N})")
    K = N - 1

    def run(channel: int) -> dict:
        if progress:
            progress(f"channel {channel}: solving for node index {K - channel}")
        return _audit_channel(d, K, channel, b, M, scheme, tol)

    channels = list(range(K + 1))
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            entries = list(executor.map(run, channels))
    else:
        entries = [run(channel) for channel in channels]

    found_multiplicity = sum(e["multiplicity"] for e in entries if e["present"])
    expected_multiplicity = harmonic_multiplicity(d + 1, K)
    return {
        "schema": SCHEMA_VERSION,
        "N": N,
        "d": d,
        "b": b,
        "grid": M,
        "scheme": scheme,
        "level": level_energy(d, K),
        "tolerance": tol,
        "channels": entries,
        "multiplicity": found_multiplicity,
        "expected_multiplicity": expected_multiplicity,
        "pass": found_multiplicity == expected_multiplicity and all(e["present"] for e in entries),
    }
