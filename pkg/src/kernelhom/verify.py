"""Verifiers for the path/cycle density inequalities and their identities.

Every verifier returns a :class:`VerdictReport` whose ``slack`` is oriented so
that a nonnegative value means the inequality holds on the instance. Where a
second route exists (brute-force oracle, spectral moments) its value is
carried in ``context`` and its agreement is recorded in ``checks``.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from math import comb

import numpy as np

from kernelhom.densities import (
    oracle_map_count,
    t_graph,
    t_hom_oracle,
    t_path_fast,
    t_subgraph,
)
from kernelhom.graphs import (
    Graph,
    compositions,
    even_spanning_subgraphs,
    even_subgraphs_of_size,
    make_path,
)
from kernelhom.kernels import StepKernel, complement, edge_density, to_signed
from kernelhom.spectral import Spectrum, decompose, moments

DEFAULT_TOL = 1e-9
ROUTE_TOL = 1e-8
ORACLE_REL_TOL = 1e-10
# cross-checking against the brute-force oracle is skipped above this many maps
ORACLE_CROSSCHECK_MAPS = 4096
MAX_QMD_M = 16
MAX_DECOMPOSITION_EDGES = 16


def default_tolerance() -> float:
    raw = os.environ.get("KERNELHOM_TOL")
    if raw is None:
        return DEFAULT_TOL
    value = float(raw)
    if not value >= 0:
        raise ValueError(f"KERNELHOM_TOL must be a nonnegative number, got {raw!r}")
    return value


@dataclass
class VerdictReport:
    claim_id: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    passed: bool
    context: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "context": self.context,
            "checks": self.checks,
        }


def make_report(claim_id, lhs, rhs, tol, context=None, checks=None) -> VerdictReport:
    """Build a report; it passes iff ``lhs - rhs >= -tol`` and every check holds."""
    lhs, rhs = float(lhs), float(rhs)
    slack = lhs - rhs
    checks = dict(checks or {})
    passed = bool(slack >= -tol and all(checks.values()))
    return VerdictReport(claim_id, lhs, rhs, slack, float(tol), passed, dict(context or {}), checks)


def _tolerance(tol, scale_base: float, power: int) -> float:
    base = default_tolerance() if tol is None else tol
    return base * max(1.0, scale_base**power)


def _context(H: Graph | None, W: StepKernel, **extra) -> dict:
    ctx = {}
    if H is not None:
        ctx["graph"] = H.describe()
    ctx["kernel"] = W.fingerprint()
    ctx.update(extra)
    return ctx


def _require_path_or_cycle(H: Graph):
    if H.kind not in ("path", "edge", "cycle"):
        raise ValueError(f"claim needs a path or a cycle, got {H.describe()}")


def _density_pair(H: Graph, W: StepKernel, oracle_limit: int):
    """Fast density and, within ``oracle_limit`` maps, the brute-force value."""
    fast = t_graph(H, W)
    if oracle_map_count(H, W) <= oracle_limit:
        return fast, t_hom_oracle(H, W)
    return fast, None


def _agrees(fast: float, oracle: float | None) -> bool:
    if oracle is None:
        return True
    return abs(fast - oracle) <= ORACLE_REL_TOL * max(1.0, abs(oracle))


# ---------------------------------------------------------------------------
# q_{m,d}: sum of t_F(U) over even subgraphs of P_m with 2d edges
# ---------------------------------------------------------------------------


def _check_md(m: int, d: int):
    if not (1 <= d and 2 * d <= m):
        raise ValueError(f"need 1 <= d <= m/2, got m={m}, d={d}")
    if m > MAX_QMD_M:
        raise ValueError(f"m={m} exceeds the limit {MAX_QMD_M}")


def q_md_via_subgraphs(m: int, d: int, U: StepKernel, cache=None) -> float:
    _check_md(m, d)
    cache = {} if cache is None else cache
    return float(sum(t_subgraph(F, U, cache=cache) for F in even_subgraphs_of_size(make_path(m), 2 * d)))


def q_md_via_moments(m: int, d: int, U: StepKernel, spectrum: Spectrum | None = None) -> float:
    """Expected h_{2d} of ``m - 2d + 1`` i.i.d. copies of the spectral law,
    expanded monomial by monomial."""
    _check_md(m, d)
    s = decompose(U) if spectrum is None else spectrum
    mom = moments(s, 2 * d)
    total = 0.0
    for c in compositions(m, d):
        term = 1.0
        for ell in c.parts:
            term *= mom[ell]
        total += term
    return total


def verify_main_ineq(m: int, d: int, U: StepKernel, tol=None, spectrum=None, cache=None) -> VerdictReport:
    q_sub = q_md_via_subgraphs(m, d, U, cache=cache)
    q_mom = q_md_via_moments(m, d, U, spectrum=spectrum)
    t_e = edge_density(U)
    rhs = comb(m, 2 * d) * t_e ** (2 * d)
    route_tol = ROUTE_TOL * max(1.0, U.bound ** (2 * d))
    return make_report(
        "thm:main_ineq",
        q_sub,
        rhs,
        _tolerance(tol, U.bound, 2 * d),
        _context(None, U, m=m, d=d, q_via_moments=q_mom),
        {"routes_agree": abs(q_sub - q_mom) <= route_tol},
    )


def verify_hunter_nonneg(m: int, d: int, U: StepKernel, tol=None, cache=None) -> VerdictReport:
    q_sub = q_md_via_subgraphs(m, d, U, cache=cache)
    q_mom = q_md_via_moments(m, d, U)
    route_tol = ROUTE_TOL * max(1.0, U.bound ** (2 * d))
    return make_report(
        "eq:hunter",
        q_sub,
        0.0,
        _tolerance(tol, U.bound, 2 * d),
        _context(None, U, m=m, d=d, q_via_moments=q_mom),
        {"routes_agree": abs(q_sub - q_mom) <= route_tol},
    )


# ---------------------------------------------------------------------------
# Main inequality and commonality
# ---------------------------------------------------------------------------


def _colour_sum(H: Graph, W: StepKernel, oracle_limit: int):
    Wc = complement(W)
    a, a_or = _density_pair(H, W, oracle_limit)
    b, b_or = _density_pair(H, Wc, oracle_limit)
    ctx = {}
    checks = {}
    if a_or is not None:
        ctx["oracle_lhs"] = a_or + b_or
        checks["oracle_agrees"] = _agrees(a, a_or) and _agrees(b, b_or)
    return a + b, Wc, ctx, checks


def verify_main(H: Graph, W: StepKernel, tol=None, oracle_limit=ORACLE_CROSSCHECK_MAPS) -> VerdictReport:
    """t_H(W) + t_H(1-W) >= t_{K_2}(W)^e + t_{K_2}(1-W)^e."""
    _require_path_or_cycle(H)
    e = H.edge_count
    lhs, Wc, ctx, checks = _colour_sum(H, W, oracle_limit)
    rhs = edge_density(W) ** e + edge_density(Wc) ** e
    scale = max(W.bound, Wc.bound)
    return make_report("thm:main", lhs, rhs, _tolerance(tol, scale, e), _context(H, W, **ctx), checks)


def verify_common(H: Graph, W: StepKernel, tol=None, oracle_limit=ORACLE_CROSSCHECK_MAPS) -> VerdictReport:
    """t_H(W) + t_H(1-W) >= 2^{1-e}."""
    _require_path_or_cycle(H)
    e = H.edge_count
    lhs, Wc, ctx, checks = _colour_sum(H, W, oracle_limit)
    scale = max(W.bound, Wc.bound)
    return make_report("cor:common", lhs, 2.0 ** (1 - e), _tolerance(tol, scale, e), _context(H, W, **ctx), checks)


# ---------------------------------------------------------------------------
# Multilinear expansions
# ---------------------------------------------------------------------------


def expansion_identities(H: Graph, W: StepKernel, tol=None) -> tuple[VerdictReport, VerdictReport]:
    """Expansions of t_H(W) + t_H(1-W) and of the edge-density powers in U = 2W - 1.

    Both are identities, so each report also requires ``|lhs - rhs| <= tol``.
    """
    e = H.edge_count
    U = to_signed(W)
    Wc = complement(W)
    tol_value = _tolerance(tol, max(W.bound, Wc.bound, U.bound), e)
    even = even_spanning_subgraphs(H)
    cache: dict = {}
    t_u = edge_density(U)

    lhs_a = t_graph(H, W) + t_graph(H, Wc)
    rhs_a = 2.0 ** (1 - e) * (1.0 + sum(t_subgraph(F, U, cache=cache) for F in even))
    lhs_b = edge_density(W) ** e + edge_density(Wc) ** e
    rhs_b = 2.0 ** (1 - e) * (1.0 + sum(t_u ** F.edge_count for F in even))

    ctx = _context(H, W, even_subgraphs=len(even))
    rep_a = make_report("eq:tH", lhs_a, rhs_a, tol_value, ctx, {"two_sided": abs(lhs_a - rhs_a) <= tol_value})
    rep_b = make_report("eq:tK", lhs_b, rhs_b, tol_value, dict(ctx), {"two_sided": abs(lhs_b - rhs_b) <= tol_value})
    return rep_a, rep_b


# ---------------------------------------------------------------------------
# Nonnegativity of the even-subgraph sum and its regroupings
# ---------------------------------------------------------------------------


def _excess(F, U, t_e, cache):
    return t_subgraph(F, U, cache=cache) - t_e**F.edge_count


def cycle_recount(H: Graph, U: StepKernel, cache=None) -> float:
    """Even-subgraph excess of C_m regrouped by a missing edge.

    Every proper even subgraph F is counted once for each of the ``m - e(F)``
    edges it misses, so its term is weighted ``1 / (m - e(F))``; for even ``m``
    the full cycle is added separately.
    """
    if H.kind != "cycle":
        raise ValueError("cycle_recount needs a cycle")
    cache = {} if cache is None else cache
    m = H.edge_count
    t_e = edge_density(U)
    total = 0.0
    for k in range(m):
        G = H.without_edge(k)
        for d in range(1, (m - 1) // 2 + 1):
            inner = sum(_excess(F, U, t_e, cache) for F in even_subgraphs_of_size(G, 2 * d))
            total += inner / (m - 2 * d)
    if m % 2 == 0:
        total += t_graph(H, U) - t_e**m
    return total


def verify_nonneg_decomposition(H: Graph, U: StepKernel, tol=None) -> VerdictReport:
    """Sum over E^+(H) of t_F(U) - t_{K_2}(U)^{e(F)} is nonnegative.

    For paths each fixed-size group must be nonnegative on its own; for
    cycles the edge-deletion regrouping must reproduce the direct sum.
    """
    _require_path_or_cycle(H)
    e = H.edge_count
    if e > MAX_DECOMPOSITION_EDGES:
        raise ValueError(f"e(H)={e} exceeds the limit {MAX_DECOMPOSITION_EDGES}")
    tol_value = _tolerance(tol, U.bound, e)
    cache: dict = {}
    t_e = edge_density(U)
    by_size: dict[int, float] = {}
    for F in even_spanning_subgraphs(H):
        by_size[F.edge_count] = by_size.get(F.edge_count, 0.0) + _excess(F, U, t_e, cache)
    groups = [by_size[k] for k in sorted(by_size)]
    direct = float(sum(groups))
    ctx = _context(H, U, by_size=groups)
    checks = {}
    if H.kind == "cycle":
        regrouped = cycle_recount(H, U, cache)
        ctx["recount"] = regrouped
        checks["recount_identity"] = abs(direct - regrouped) <= tol_value
    else:
        checks["groups_nonnegative"] = all(g >= -tol_value for g in groups)
    return make_report("eq:nonneg", direct, 0.0, tol_value, ctx, checks)


# ---------------------------------------------------------------------------
# Stability
# ---------------------------------------------------------------------------


def _require_stability_host(H: Graph):
    _require_path_or_cycle(H)
    if H.edge_count < 2:
        raise ValueError("stability needs a path with at least 2 edges or a cycle")


def stability_common(H: Graph, W: StepKernel, tol=None) -> VerdictReport:
    """t_{P_2}(2W-1) <= eps / (e(H) - 1), eps the excess over 2^{1-e}."""
    _require_stability_host(H)
    e = H.edge_count
    U = to_signed(W)
    colour = t_graph(H, W) + t_graph(H, complement(W))
    eps = max(0.0, 2.0 ** (e - 1) * colour - 1.0)
    t_p2 = t_path_fast(2, U)
    tol_value = _tolerance(tol, max(W.bound, U.bound), e)
    ctx = _context(H, W, epsilon=eps, t_p2_signed=t_p2)
    checks = {}
    if H.kind == "cycle" and e % 2 == 0:
        t_c = t_graph(H, U)
        ctx["t_cycle_signed"] = t_c
        ctx["cut_norm_upper_bound"] = eps ** (1.0 / e)
        checks["cycle_below_eps"] = t_c <= eps + tol_value
    return make_report("thm:st1", eps / (e - 1), t_p2, tol_value, ctx, checks)


def stability_main(H: Graph, W: StepKernel, tol=None) -> VerdictReport:
    """t_{P_2}(U) - t_{K_2}(U)^2 <= eps / (e(H) - 1), eps from the main-inequality slack."""
    _require_stability_host(H)
    e = H.edge_count
    U = to_signed(W)
    Wc = complement(W)
    gap = t_graph(H, W) + t_graph(H, Wc) - edge_density(W) ** e - edge_density(Wc) ** e
    eps = max(0.0, 2.0 ** (e - 1) * gap)
    variance = t_path_fast(2, U) - edge_density(U) ** 2
    tol_value = _tolerance(tol, max(W.bound, U.bound), e)
    ctx = _context(H, W, epsilon=eps, degree_variance=variance)
    if H.kind == "cycle" and e % 2 == 0:
        ctx["quasirandom_cut_norm_upper_bound"] = eps ** (1.0 / (2 * e))
    return make_report("thm:st2", eps / (e - 1), variance, tol_value, ctx)


@dataclass(frozen=True)
class DegreeProfile:
    degrees: np.ndarray
    measures: np.ndarray
    t_p2: float
    t_k2: float

    @property
    def variance(self) -> float:
        return self.t_p2 - self.t_k2**2

    def markov_fraction(self, threshold: float) -> float:
        """Measure of the blocks whose squared degree is at least ``threshold``."""
        return float(self.measures[self.degrees**2 >= threshold].sum())

    def markov_holds(self, threshold: float, tol: float = 1e-12) -> bool:
        return self.markov_fraction(threshold) * threshold <= self.t_p2 + tol


def degree_profile(U: StepKernel) -> DegreeProfile:
    degrees = U.matrix @ U.measures
    t_p2 = float(U.measures @ degrees**2)
    return DegreeProfile(degrees, U.measures, t_p2, edge_density(U))


# ---------------------------------------------------------------------------
# Claim dispatch and report serialisation
# ---------------------------------------------------------------------------

CLAIM_NAMES = (
    "main",
    "common",
    "nonneg",
    "qmd:m:d",
    "hunter:m:d",
    "even-cycle:m",
    "stability-common",
    "stability-main",
    "identities",
    "all",
)


def _int_args(claim: str, count: int) -> list[int]:
    parts = claim.split(":")[1:]
    if len(parts) != count:
        raise ValueError(f"claim {claim!r} expects {count} integer argument(s)")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"claim {claim!r} has non-integer arguments") from None


def validate_claim(claim: str, H: Graph) -> None:
    """Raise ``ValueError`` if ``claim`` is unknown or does not apply to ``H``."""
    head = claim.split(":")[0]
    if head in ("main", "common", "identities", "all"):
        if head != "identities":
            _require_path_or_cycle(H)
        if claim != head:
            raise ValueError(f"claim {head!r} takes no arguments")
    elif head == "nonneg":
        _require_path_or_cycle(H)
        if H.edge_count > MAX_DECOMPOSITION_EDGES:
            raise ValueError(f"nonneg supports at most {MAX_DECOMPOSITION_EDGES} edges")
    elif head in ("qmd", "hunter"):
        _check_md(*_int_args(claim, 2))
    elif head == "even-cycle":
        (m,) = _int_args(claim, 1)
        if m < 2 or m % 2:
            raise ValueError("even-cycle needs an even length m >= 2")
    elif head in ("stability-common", "stability-main"):
        _require_stability_host(H)
    else:
        raise ValueError(f"unknown claim {claim!r}; choose from {', '.join(CLAIM_NAMES)}")


def run_claim(claim: str, H: Graph, W: StepKernel, tol=None) -> list[VerdictReport]:
    """Evaluate a named claim. Claims about a signed kernel use ``W`` as given."""
    from kernelhom.spectral import even_cycle_check

    validate_claim(claim, H)
    head = claim.split(":")[0]
    if head == "main":
        reports = [verify_main(H, W, tol)]
    elif head == "common":
        reports = [verify_common(H, W, tol)]
    elif head == "nonneg":
        reports = [verify_nonneg_decomposition(H, W, tol)]
    elif head == "qmd":
        m, d = _int_args(claim, 2)
        reports = [verify_main_ineq(m, d, W, tol)]
    elif head == "hunter":
        m, d = _int_args(claim, 2)
        reports = [verify_hunter_nonneg(m, d, W, tol)]
    elif head == "even-cycle":
        (m,) = _int_args(claim, 1)
        reports = [even_cycle_check(W, m, default_tolerance() if tol is None else tol)]
    elif head == "stability-common":
        reports = [stability_common(H, W, tol)]
    elif head == "stability-main":
        reports = [stability_main(H, W, tol)]
    elif head == "identities":
        reports = list(expansion_identities(H, W, tol))
    else:
        reports = _run_all(H, W, tol)
    for r in reports:
        r.context.setdefault("graph", H.describe())
    return reports


def _run_all(H: Graph, W: StepKernel, tol) -> list[VerdictReport]:
    from kernelhom.spectral import even_cycle_check

    e = H.edge_count
    reports = [verify_main(H, W, tol), verify_common(H, W, tol)]
    reports.extend(expansion_identities(H, W, tol))
    if e <= MAX_DECOMPOSITION_EDGES:
        reports.append(verify_nonneg_decomposition(H, W, tol))
    if e >= 2:
        reports.append(stability_common(H, W, tol))
        reports.append(stability_main(H, W, tol))
    # cycles reduce to the path left after deleting one edge
    m = e - 1 if H.kind == "cycle" else e
    if m <= MAX_QMD_M:
        spectrum = decompose(W)
        cache: dict = {}
        for d in range(1, m // 2 + 1):
            reports.append(verify_main_ineq(m, d, W, tol, spectrum=spectrum, cache=cache))
    if H.kind == "cycle" and e % 2 == 0:
        reports.append(even_cycle_check(W, e, default_tolerance() if tol is None else tol))
    return reports


CSV_COLUMNS = ("claim_id", "graph", "lhs", "rhs", "slack", "pass", "seed", "trial")


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    return value


def reports_to_json(reports) -> str:
    return json.dumps([_jsonable(r.to_dict()) for r in reports], indent=2)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow([
            r.claim_id,
            r.context.get("graph", ""),
            repr(r.lhs),
            repr(r.rhs),
            repr(r.slack),
            "true" if r.passed else "false",
            r.context.get("seed", ""),
            r.context.get("trial", ""),
        ])
    return buf.getvalue()
