"""Probability measures on highest weights and their continuum limits.

The character measure puts mass m_lam chi_lam(e^t) / prod_k chi_k(e^t)^N_k
on each summand of a decomposition.  At t = 0 this weighs by dimension
(computed exactly); small t interpolates toward the Gaussian regime.  The
functions here evaluate those measures, their pointwise asymptotics, and
total-variation distances between rescaled exact measures and their limit
densities on rectangular grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charalg import (
    DecompositionTable,
    Weight,
    character_value,
    weyl_dimension,
)
from .errors import (
    ConvergenceError,
    DomainError,
    GridCoverageError,
    InternalConsistencyError,
    LegendreDomainError,
    NonRegularError,
)
from .legendre import (
    TensorProblem,
    f_eval,
    f_grad_hess,
    forward_dual,
    hessian_at_origin,
    limit_density,
    rate_point,
    tensor_problem,
)
from .numerics import cell_integrals
from .rootsys import AlgebraSpec, RootSystem, build_root_system


def plancherel_measure(table: DecompositionTable) -> dict[Weight, Fraction]:
    """Exact dimension-weighted measure m_lam dim(lam) / dim(product)."""
    rs = table.rs
    total = 1
    for nu, n in table.problem:
        total *= weyl_dimension(rs, nu) ** n
    probs = {lam: Fraction(m * weyl_dimension(rs, lam), total) for lam, m in table.entries.items()}
    if sum(probs.values()) != 1:
        raise InternalConsistencyError("dimension-weighted measure does not sum to one")
    return probs


def character_probabilities(table: DecompositionTable, t=None) -> dict[Weight, float]:
    """Character measure as floats; t = None or 0 means dimension weighting."""
    rs = table.rs
    if t is not None:
        t = np.asarray(t, dtype=float)
    if t is None or not np.any(t):
        return {lam: float(p) for lam, p in plancherel_measure(table).items()}
    log_norm = 0.0
    for nu, n in table.problem:
        lg, _ = character_value(rs, nu, t)
        log_norm += n * lg
    probs = {}
    for lam, m in table.entries.items():
        lg, _ = character_value(rs, lam, t)
        probs[lam] = math.exp(math.log(m) + lg - log_norm)
    total = sum(probs.values())
    if abs(total - 1.0) > 1e-9:
        raise InternalConsistencyError(f"character measure sums to {total}, expected 1")
    return {lam: p / total for lam, p in probs.items()}


@dataclass(frozen=True)
class Scaling:
    """Affine map a = spread * (lambda_root - center) onto limit-law coordinates.

    x_scalar is the Hess f(0) = x B constant for bulk scalings and None for
    the Gaussian fluctuation scaling.
    """

    epsilon: float
    x_scalar: float | None
    center: tuple[float, ...]
    spread: float

    def apply(self, lam_root: np.ndarray) -> np.ndarray:
        return self.spread * (np.asarray(lam_root, dtype=float) - np.asarray(self.center))


def gaussian_scaling(problem: TensorProblem, t) -> Scaling:
    """Fluctuation coordinates a = (eps lam - eta) / sqrt(eps) around the mean eta."""
    t = np.zeros(problem.rs.rank) if t is None else np.asarray(t, dtype=float)
    eta = forward_dual(problem, t)
    eps = problem.epsilon
    return Scaling(epsilon=eps, x_scalar=None, center=tuple(eta / eps), spread=math.sqrt(eps))


def bulk_scaling(problem: TensorProblem) -> Scaling:
    """Semiclassical coordinates a = (lam + rho) * sqrt(eps / x).

    x is the Hess f(0) = x B constant.  Centering at -rho uses the shifted
    weight, the coordinate the dimension and hook products are functions
    of; the shift is O(sqrt(eps)) in limit coordinates, so the limit law
    is unchanged while finite-N convergence is an order faster.
    """
    x, resid = hessian_at_origin(problem)
    if resid > 1e-8 * max(x, 1.0):
        raise InternalConsistencyError(f"Hess f(0) is not proportional to B, residual {resid}")
    rho = tuple(-float(v) for v in problem.rs.rho_root)
    return Scaling(
        epsilon=problem.epsilon,
        x_scalar=x,
        center=rho,
        spread=math.sqrt(problem.epsilon / x),
    )


def asymptotic_log_probability(problem: TensorProblem, lam, t=None) -> float:
    """Pointwise asymptotics of ln P(lambda) under the character measure.

    Two regimes.  For t = 0 the dimension factor contributes the root
    products of xi = eps lambda; for regular t the character of lambda is
    dominated by one Weyl term, and t is first reflected into the positive
    chamber (the measure is invariant).  Both regimes carry the
    multiplicity prefactor, which degenerates on chamber walls, so lambda
    must be strictly dominant.  Nonzero t on a chamber wall is outside
    both regimes.
    """
    rs = problem.rs
    lam = tuple(int(c) for c in lam)
    if any(c < 0 for c in lam):
        raise DomainError(f"lambda {lam} is not dominant")
    if any(c == 0 for c in lam):
        raise NonRegularError(f"lambda {lam} lies on a chamber wall")
    eps = problem.epsilon
    r = rs.rank
    xi = eps * np.array([float(v) for v in rs.root_coords(lam)])
    if t is not None:
        t = np.asarray(t, dtype=float)

    if t is None or not np.any(t):
        rp = rate_point(problem, xi)
        xi_pair = rs.pos_pairing_f @ xi
        log_dim_scaled = float(np.sum(np.log(xi_pair)) - np.sum(np.log(rs.rho_pos_pairings_f)))
        f0 = f_eval(problem, np.zeros(r))
        return float(
            (rp.S - f0) / eps
            + (0.5 * r - rs.n_positive) * math.log(eps)
            + rp.log_prefactor
            + log_dim_scaled
        )

    t_dom = _reflect_to_chamber(rs, t)
    t_pair = rs.pos_pairing_f @ t_dom
    scale = math.sqrt(float(t_dom @ rs.B_f @ t_dom))
    if np.min(t_pair) <= 1e-8 * scale:
        raise NonRegularError("nonzero t on a chamber wall has no single-phase asymptotics")
    rp = rate_point(problem, xi)
    x = np.array(rp.x)
    log_delta_t = float(np.sum(np.log(2.0 * np.sinh(0.5 * t_pair))))
    rho_xt = float(rs.rho_root_f @ rs.B_f @ (x - t_dom))
    s_tilde = rp.S - f_eval(problem, t_dom) + float(t_dom @ rs.B_f @ xi)
    sign, logdetK = np.linalg.slogdet(np.array(rp.K))
    log_delta_x = rp.log_prefactor - 0.5 * logdetK + 0.5 * r * math.log(2 * math.pi) + float(
        rs.rho_root_f @ rs.B_f @ x
    )
    return float(
        s_tilde / eps
        + 0.5 * r * math.log(eps)
        + 0.5 * logdetK
        - 0.5 * r * math.log(2.0 * math.pi)
        + log_delta_x
        - log_delta_t
        - rho_xt
    )


def _reflect_to_chamber(rs: RootSystem, t: np.ndarray) -> np.ndarray:
    """Weyl-reflect a root-coordinate vector into the closed dominant chamber."""
    t = np.array(t, dtype=float)
    d = [float(x) for x in rs.d]
    for _ in range(10000):
        pair = rs.B_f @ t  # (alpha_a, t) over simple roots
        a = int(np.argmin(pair))
        if pair[a] >= -1e-15:
            return t
        t[a] -= pair[a] / d[a]
    raise ConvergenceError("chamber reflection did not terminate")


@dataclass(frozen=True)
class MeasureRow:
    weight: Weight
    probability: float
    asymptotic_log_probability: float
    scaled: tuple[float, ...]


@dataclass(frozen=True)
class MeasureTable:
    """Character measure of one decomposition, with rescaled positions."""

    algebra: str
    problem: tuple[tuple[Weight, int], ...]
    t: tuple[float, ...] | None
    epsilon: float
    scaling: Scaling
    rows: tuple[MeasureRow, ...]

    def probabilities(self) -> dict[Weight, float]:
        return {row.weight: row.probability for row in self.rows}

    def to_csv(self) -> str:
        r = len(self.rows[0].weight) if self.rows else 0
        header = (
            [f"lambda_{i + 1}" for i in range(r)]
            + ["probability", "asymptotic_log_probability"]
            + [f"scaled_{i + 1}" for i in range(r)]
        )
        lines = [",".join(header)]
        for row in self.rows:
            cells = [str(c) for c in row.weight]
            cells.append(repr(row.probability))
            cells.append("nan" if math.isnan(row.asymptotic_log_probability) else repr(row.asymptotic_log_probability))
            cells.extend(repr(v) for v in row.scaled)
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def assemble_measure_table(
    problem: TensorProblem,
    probs: dict[Weight, float],
    t=None,
    with_asymptotics: bool = True,
    scaling_kind: str = "auto",
) -> MeasureTable:
    """Package a probability map over dominant weights as a MeasureTable.

    Rows are sorted by weight.  The scaled column uses the Gaussian
    rescaling for regular t and the semiclassical one for t = 0 ("auto");
    pass scaling_kind "bulk" to keep semiclassical coordinates at nonzero
    t (the intermediate regime).  The asymptotic column is NaN where the
    pointwise formula does not apply (chamber walls, or scaled weights
    outside the admissible domain).
    """
    rs = problem.rs
    use_t = None if t is None or not np.any(np.asarray(t, dtype=float)) else np.asarray(t, dtype=float)
    if scaling_kind == "auto":
        scaling_kind = "bulk" if use_t is None else "gaussian"
    if scaling_kind == "bulk":
        scaling = bulk_scaling(problem)
    elif scaling_kind == "gaussian":
        scaling = gaussian_scaling(problem, use_t)
    else:
        raise ValueError(f"unknown scaling kind {scaling_kind!r}")
    rows = []
    for lam in sorted(probs):
        lam_root = np.array([float(v) for v in rs.root_coords(lam)])
        scaled = tuple(float(v) for v in scaling.apply(lam_root))
        asym = math.nan
        if with_asymptotics:
            try:
                asym = asymptotic_log_probability(problem, lam, use_t)
            except (NonRegularError, LegendreDomainError, ConvergenceError):
                asym = math.nan
        rows.append(MeasureRow(lam, probs[lam], asym, scaled))
    return MeasureTable(
        algebra=str(rs.spec),
        problem=problem.factors,
        t=None if use_t is None else tuple(float(v) for v in use_t),
        epsilon=problem.epsilon,
        scaling=scaling,
        rows=tuple(rows),
    )


def character_measure(
    table: DecompositionTable,
    t=None,
    epsilon: float | None = None,
    with_asymptotics: bool = True,
    scaling_kind: str = "auto",
) -> MeasureTable:
    """Evaluate the character measure of a decomposition as a MeasureTable."""
    rs = table.rs
    problem = tensor_problem(rs, table.problem, epsilon)
    probs = character_probabilities(table, t)
    return assemble_measure_table(problem, probs, t, with_asymptotics, scaling_kind)


def default_edges(kind: str, rs: RootSystem, K=None, cells: int = 40) -> list[np.ndarray]:
    """Documented default comparison grid, 40 cells per axis.

    Gaussian comparisons span +-5 marginal standard deviations read off
    K^{-1}; chamber-supported comparisons span [0, 5] per root coordinate
    (the dominant cone sits inside the positive orthant because C^{-1} is
    entrywise positive).
    """
    if kind == "gaussian":
        cov = np.linalg.inv(np.asarray(K, dtype=float))
        return [
            np.linspace(-5.0 * math.sqrt(cov[a, a]), 5.0 * math.sqrt(cov[a, a]), cells + 1)
            for a in range(rs.rank)
        ]
    return [np.linspace(0.0, 5.0, cells + 1) for _ in range(rs.rank)]


def lattice_aligned_edges(
    scaled_points: np.ndarray, spacing: float, cells_per: int = 2, cover=None
) -> list[np.ndarray]:
    """Grid edges aligned with the lattice of rescaled highest weights.

    The support lies on a translate of (spacing * Z)^r along each axis, so
    cells holding exactly cells_per lattice columns, with lattice points
    interior, avoid the binning combs a lattice-oblivious grid produces.
    cover, if given, lists per-axis (lo, hi) intervals the grid must also
    span (for limit-density tails extending past the exact support).
    """
    pts = np.asarray(scaled_points, dtype=float)
    edges = []
    for ax in range(pts.shape[1]):
        col = pts[:, ax]
        anchor = float(col[0])
        k = np.rint((col - anchor) / spacing)
        if np.max(np.abs(col - (anchor + k * spacing))) > 1e-6 * spacing:
            raise DomainError(f"axis {ax} points do not sit on a lattice of spacing {spacing}")
        k_lo, k_hi = float(np.min(k)), float(np.max(k))
        if cover is not None:
            lo, hi = cover[ax]
            k_lo = min(k_lo, (lo - anchor) / spacing)
            k_hi = max(k_hi, (hi - anchor) / spacing)
        j_lo = math.floor((k_lo + 0.5) / cells_per) - 1
        j_hi = math.ceil((k_hi + 0.5) / cells_per) + 1
        edges.append(anchor + (np.arange(j_lo, j_hi + 1) * cells_per - 0.5) * spacing)
    return edges


@dataclass(frozen=True)
class WeakConvergenceReport:
    tv: float
    exact_mass_in_grid: float
    limit_mass_in_grid: float
    cells: tuple[int, ...]


def weak_convergence_distance(
    m: MeasureTable,
    kind: str,
    edges=None,
    cells: int = 40,
    quad_tol: float = 1e-9,
    coverage_tol: float = 1e-6,
) -> WeakConvergenceReport:
    """Total-variation distance between binned exact and limit measures.

    The measure's scaled coordinates are binned over a rectangular grid
    (given edges, or the documented default) and compared against cell
    integrals of the matching limit density: kind "gaussian" with the
    precision matrix at the measure's t, "plancherel" at t = 0, or
    "intermediate" with u recovered from t.  The measure must carry the
    scaling of the requested regime.  Mass outside the grid counts in
    full toward the distance.
    """
    rs = build_root_system(AlgebraSpec.parse(m.algebra))
    problem = tensor_problem(rs, m.problem, m.epsilon)
    eps = m.epsilon
    t_arr = None if m.t is None else np.asarray(m.t, dtype=float)
    K = None

    if kind == "gaussian":
        if m.scaling.x_scalar is not None:
            raise DomainError("gaussian comparison needs a measure in fluctuation coordinates")
        tt = np.zeros(rs.rank) if t_arr is None else t_arr
        _, _, hess = f_grad_hess(problem, tt)
        K = rs.B_f @ np.linalg.solve(hess, rs.B_f)
        K = 0.5 * (K + K.T)

        def density(pts):
            return limit_density(rs, "gaussian", pts, K=K)

    elif kind == "plancherel":
        if t_arr is not None:
            raise DomainError("plancherel comparison requires t = 0")
        if m.scaling.x_scalar is None:
            raise DomainError("plancherel comparison needs a measure in semiclassical coordinates")

        def density(pts):
            return limit_density(rs, "plancherel", pts)

    elif kind == "intermediate":
        if t_arr is None:
            raise DomainError("intermediate comparison needs a nonzero t")
        if m.scaling.x_scalar is None:
            raise DomainError("intermediate comparison needs a measure in semiclassical coordinates")
        u = t_arr * math.sqrt(m.scaling.x_scalar / eps)

        def density(pts):
            return limit_density(rs, "intermediate", pts, u=u)

    else:
        raise ValueError(f"unknown comparison kind {kind!r}")

    pvals = np.array([row.probability for row in m.rows])
    scaled = np.array([row.scaled for row in m.rows])

    if edges is None:
        edges = default_edges(kind, rs, K=K, cells=cells)
    edges = [np.asarray(e, dtype=float) for e in edges]
    shape = tuple(len(e) - 1 for e in edges)

    idx = np.zeros((len(m.rows), rs.rank), dtype=int)
    inside = np.ones(len(m.rows), dtype=bool)
    for ax, e in enumerate(edges):
        pos = np.searchsorted(e, scaled[:, ax], side="right") - 1
        idx[:, ax] = pos
        inside &= (pos >= 0) & (pos < shape[ax])

    P = np.zeros(shape)
    np.add.at(P, tuple(idx[inside].T), pvals[inside])
    p_in = float(pvals[inside].sum())

    Q = cell_integrals(density, edges, tol=quad_tol)
    q_in = float(Q.sum())
    if q_in < 1.0 - coverage_tol:
        raise GridCoverageError(
            f"grid captures only {q_in} of the limit mass (tolerance {coverage_tol})"
        )
    tv = 0.5 * (float(np.abs(P - Q).sum()) + (1.0 - p_in) + max(0.0, 1.0 - q_in))
    return WeakConvergenceReport(
        tv=float(tv),
        exact_mass_in_grid=p_in,
        limit_mass_in_grid=q_in,
        cells=shape,
    )
