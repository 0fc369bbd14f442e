"""Bell-type inequalities and joint-distribution existence tests.

Continuous variables: a joint distribution with given zero means and
correlations exists iff the correlation matrix is positive semidefinite
(a mean-zero Gaussian is the witness). Discrete +/-1 variables: existence
is a linear feasibility problem over the 2**n sign atoms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import InvalidTargetsError, ParseError, ValidationError
from .jacobi import eigenvalues_symmetric, jacobi_eigh
from .simplex import phase_one

PSD_TOL = 1e-9
LP_TOL = 1e-9
MAX_DISCRETE_N = 5

Convention = Literal["second_minus_first", "first_minus_second"]

# variable order of the 4x4 CHSH matrix: (theta1, theta1', theta2, theta2')
CHSH_LABELS = ("theta1", "theta1p", "theta2", "theta2p")
CHSH_MEASURED = ((0, 2), (0, 3), (1, 2), (1, 3))
CHSH_MISSING = ((0, 1), (2, 3))


@dataclass(frozen=True)
class CorrelationMatrix:
    labels: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValidationError(f"correlation matrix must be square, got shape {e.shape}")
        if len(self.labels) != e.shape[0]:
            raise ValidationError("one label per row required")
        if not np.all(np.diag(e) == 1.0):
            raise ValidationError("correlation matrix diagonal must be exactly 1")
        if np.max(np.abs(e - e.T)) > 1e-12:
            raise ValidationError("correlation matrix must be symmetric")
        if np.any(np.abs(e) > 1.0 + 1e-12):
            raise ValidationError("correlations must lie in [-1, 1]")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def pairs(self) -> dict[tuple[int, int], float]:
        return {(i, j): float(self.entries[i, j]) for i, j in itertools.combinations(range(self.n), 2)}


def parse_matrix_text(text: str, labels: Sequence[str] | None = None) -> CorrelationMatrix:
    """One row per line, whitespace-separated decimals; blank lines and ``#`` comments skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ParseError("matrix text holds no rows")
    width = len(rows[0])
    for k, r in enumerate(rows, start=1):
        if len(r) != width:
            raise ParseError(f"row {k} has {len(r)} entries, expected {width}")
    labels = tuple(labels) if labels is not None else tuple(f"v{i + 1}" for i in range(len(rows)))
    return CorrelationMatrix(labels, np.array(rows))


@dataclass(frozen=True)
class AngleSet:
    angles: tuple[float, ...]
    convention: Convention = "second_minus_first"

    def rho(self, i: int, j: int) -> float:
        d = self.angles[j] - self.angles[i]
        if self.convention == "first_minus_second":
            d = -d
        return -math.sin(d)


def build_correlation_matrix(angle_set: AngleSet, labels: Sequence[str] | None = None) -> CorrelationMatrix:
    """Pairwise ``-sin`` correlations of an angle list.

    The default ``second_minus_first`` uses ``-sin(theta_j - theta_i)`` for
    ``i < j``, which is the sign pattern of the classic three-angle matrix.
    """
    n = len(angle_set.angles)
    if n < 2:
        raise ValidationError("need at least two angles")
    e = np.eye(n)
    for i, j in itertools.combinations(range(n), 2):
        e[i, j] = e[j, i] = angle_set.rho(i, j)
    return CorrelationMatrix(tuple(labels) if labels else tuple(f"theta{i + 1}" for i in range(n)), e)


class ChshResult(NamedTuple):
    value: float
    violated: bool


class Bell3Result(NamedTuple):
    value: float
    satisfied: bool


def chsh_value(rho: Callable[[float, float], float], theta1, theta2, theta1p, theta2p) -> ChshResult:
    """S = rho(a, b) - rho(a, b') + rho(a', b) + rho(a', b')."""
    s = rho(theta1, theta2) - rho(theta1, theta2p) + rho(theta1p, theta2) + rho(theta1p, theta2p)
    return ChshResult(s, abs(s) > 2.0)


def bell3_sum(rho12: float, rho13: float, rho23: float) -> Bell3Result:
    for r in (rho12, rho13, rho23):
        if abs(r) > 1.0:
            raise ValidationError(f"correlation {r} outside [-1, 1]")
    s = rho12 + rho13 + rho23
    return Bell3Result(s, s >= -1.0)


def cofactor_determinant(entries) -> float:
    """Laplace expansion along the first row; meant for n <= 5."""
    a = np.asarray(entries, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1) ** j * a[0, j] * cofactor_determinant(minor)
    return total


def psd_verdict(eigenvalues: Sequence[float], tol: float = PSD_TOL) -> bool:
    w = np.asarray(eigenvalues)
    return bool(w.min() >= -tol * max(1.0, float(w.max())))


@dataclass(frozen=True)
class GaussianWitness:
    """Mean-zero Gaussian whose covariance is the given correlation matrix."""

    covariance: np.ndarray

    def sample(self, size: int, seed: int) -> np.ndarray:
        w, v = jacobi_eigh(self.covariance)
        factor = v * np.sqrt(np.clip(w, 0.0, None))
        z = np.random.default_rng(seed).standard_normal((size, len(w)))
        return z @ factor.T


@dataclass(frozen=True)
class DiscreteAtoms:
    """Probability table over the points of {-1, +1}**n."""

    atoms: np.ndarray
    probabilities: np.ndarray

    def mean(self, i: int) -> float:
        return float(self.probabilities @ self.atoms[:, i])

    def moment(self, i: int, j: int) -> float:
        return float(self.probabilities @ (self.atoms[:, i] * self.atoms[:, j]))

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return {tuple(int(s) for s in a): float(p) for a, p in zip(self.atoms, self.probabilities) if p > 0}


def joint_exists_continuous(matrix: CorrelationMatrix | np.ndarray, tol: float = PSD_TOL):
    entries = matrix.entries if isinstance(matrix, CorrelationMatrix) else np.asarray(matrix, float)
    ok = psd_verdict(eigenvalues_symmetric(entries), tol)
    return ok, (GaussianWitness(np.array(entries)) if ok else None)


def sign_atoms(n: int) -> np.ndarray:
    return np.array(list(itertools.product((1, -1), repeat=n)), dtype=float)


def joint_exists_discrete(
    n: int,
    means: Sequence[float | None] | None,
    correlations: Mapping[tuple[int, int], float],
    tol: float = LP_TOL,
):
    """Feasibility of a +/-1 joint law with the given means and pairwise moments.

    ``means`` entries set to ``None`` (or ``means=None``) leave that mean free;
    correlation pairs not listed are unconstrained.
    """
    if not 1 <= n <= MAX_DISCRETE_N:
        raise InvalidTargetsError(f"n must be in 1..{MAX_DISCRETE_N}, got {n}")
    if means is not None and len(means) != n:
        raise InvalidTargetsError(f"expected {n} means, got {len(means)}")
    atoms = sign_atoms(n)
    rows = [np.ones(len(atoms))]
    rhs = [1.0]
    for i, m in enumerate(means or []):
        if m is None:
            continue
        if abs(m) > 1:
            raise InvalidTargetsError(f"mean {m} of variable {i} outside [-1, 1]")
        rows.append(atoms[:, i])
        rhs.append(float(m))
    for (i, j), c in correlations.items():
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise InvalidTargetsError(f"unknown pair ({i}, {j}) for n={n}")
        if abs(c) > 1:
            raise InvalidTargetsError(f"correlation {c} for pair ({i}, {j}) outside [-1, 1]")
        rows.append(atoms[:, i] * atoms[:, j])
        rhs.append(float(c))
    result = phase_one(np.array(rows), np.array(rhs), tol=tol)
    if not result.feasible:
        return False, None
    p = np.clip(result.x, 0.0, None)
    return True, DiscreteAtoms(atoms, p / p.sum())


def fine_triple_feasible(rho12: float, rho13: float, rho23: float) -> bool:
    """Closed-form criterion for three +/-1 variables with all pairs given."""
    return (
        rho12 + rho13 + rho23 >= -1
        and rho12 - rho13 - rho23 >= -1
        and -rho12 + rho13 - rho23 >= -1
        and -rho12 - rho13 + rho23 >= -1
    )


def chsh_pairs_feasible(four: Sequence[float]) -> bool:
    """All eight CHSH combinations (odd number of minus signs) bounded by 2."""
    total = sum(four)
    return all(abs(total - 2 * r) <= 2 for r in four)


def chsh_matrix(four: Sequence[float], missing: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """4x4 matrix in variable order (theta1, theta1', theta2, theta2').

    ``four`` = (rho(theta1, theta2), rho(theta1, theta2'), rho(theta1', theta2), rho(theta1', theta2')).
    ``missing`` = (rho(theta1, theta1'), rho(theta2, theta2')).
    """
    e = np.eye(4)
    for (i, j), r in zip(CHSH_MEASURED + CHSH_MISSING, tuple(four) + tuple(missing)):
        e[i, j] = e[j, i] = r
    return e


@dataclass(frozen=True)
class CompletionResult:
    best_missing_pair: tuple[float, float]
    min_eigenvalue: float
    any_psd: bool
    grid_best_pair: tuple[float, float]
    grid_min_eigenvalue: float
    grid_any_psd: bool


def _min_eigs_on(four, a_vals: np.ndarray, b_vals: np.ndarray) -> np.ndarray:
    base = chsh_matrix(four)
    stack = np.broadcast_to(base, (len(a_vals), len(b_vals), 4, 4)).copy()
    stack[..., 0, 1] = stack[..., 1, 0] = a_vals[:, None]
    stack[..., 2, 3] = stack[..., 3, 2] = b_vals[None, :]
    w = eigenvalues_symmetric(stack)
    return w[..., 0], w[..., -1]


def complete_chsh_matrix(four: Sequence[float], grid_step: float = 0.01, refine: bool = True) -> CompletionResult:
    """Search the two unmeasured correlations for the most positive completion.

    A grid over [-1, 1]**2 is scanned first (ties go to the lexicographically
    smallest point). The minimum eigenvalue is concave in the two free entries,
    so the grid optimum is then polished by successively finer local grids;
    this reaches completions whose PSD set is a single off-grid point.
    """
    for r in four:
        if abs(r) > 1:
            raise ValidationError(f"correlation {r} outside [-1, 1]")
    k = int(round(2.0 / grid_step))
    grid = np.linspace(-1.0, 1.0, k + 1)
    lo, hi = _min_eigs_on(four, grid, grid)
    flat = int(np.argmax(lo))
    ia, ib = divmod(flat, len(grid))
    best = (float(grid[ia]), float(grid[ib]))
    best_val = float(lo[ia, ib])
    grid_any = bool(np.any(lo >= -PSD_TOL * np.maximum(1.0, hi)))
    grid_best, grid_val = best, best_val

    step = grid_step
    while refine and step > 1e-13:
        step /= 10.0
        offs = np.arange(-10, 11) * step
        a_vals = np.clip(best[0] + offs, -1.0, 1.0)
        b_vals = np.clip(best[1] + offs, -1.0, 1.0)
        lo_r, _ = _min_eigs_on(four, a_vals, b_vals)
        ia, ib = divmod(int(np.argmax(lo_r)), len(offs))
        if lo_r[ia, ib] > best_val:
            best, best_val = (float(a_vals[ia]), float(b_vals[ib])), float(lo_r[ia, ib])

    w = eigenvalues_symmetric(chsh_matrix(four, best))
    return CompletionResult(best, best_val, psd_verdict(w), grid_best, grid_val, grid_any)


@dataclass
class InequalityReport:
    labels: tuple[str, ...]
    eigenvalues: list[float]
    psd_verdict: bool
    tolerance: float = PSD_TOL
    chsh_value: float | None = None
    bell3_sum: float | None = None
    discrete_feasible: bool | None = None
    witnesses: dict = field(default_factory=dict)


def analyze_matrix(matrix: CorrelationMatrix, discrete: bool = True) -> InequalityReport:
    """Spectrum, PSD verdict, Bell-3 sum (n=3) and the zero-mean +/-1 LP (n<=5)."""
    w = eigenvalues_symmetric(matrix.entries)
    ok, gauss = joint_exists_continuous(matrix)
    report = InequalityReport(matrix.labels, [float(x) for x in w], ok)
    if gauss is not None:
        report.witnesses["gaussian_covariance"] = gauss.covariance.tolist()
    if matrix.n == 3:
        p = matrix.pairs()
        report.bell3_sum = bell3_sum(p[(0, 1)], p[(0, 2)], p[(1, 2)]).value
    if discrete and matrix.n <= MAX_DISCRETE_N:
        feas, atoms = joint_exists_discrete(matrix.n, [0.0] * matrix.n, matrix.pairs())
        report.discrete_feasible = feas
        if atoms is not None:
            report.witnesses["discrete_atoms"] = [
                [list(map(int, a)), float(p)] for a, p in zip(atoms.atoms, atoms.probabilities) if p > 0
            ]
    return report

