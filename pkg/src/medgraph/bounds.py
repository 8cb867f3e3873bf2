"""Numerical checks relating Common Labelling values to median graph costs.

Every check compares two computed quantities (``lhs`` and ``rhs``) with a
relation ``<=`` or ``==``.  Slack is ``rhs - lhs``; an inequality passes when
``slack >= -tol`` and an equality when ``|slack| <= tol``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .costs import SUM_ABS, SUM_SQ, CostSpec
from .graph import GraphSet
from .solvers import (DEFAULT_BUDGET, MedianResult, approximated_median,
                      exact_generalized_median, pairwise_distance)

DEFAULT_TOL = 1e-9


class HypothesisError(ValueError):
    """A check was requested under a cost that does not satisfy its hypothesis."""


@dataclass(frozen=True)
class Check:
    name: str
    lhs: float
    relation: str
    rhs: float
    tol: float = DEFAULT_TOL
    # False when the check's hypothesis did not hold; nothing is asserted then
    applicable: bool = True

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> Optional[bool]:
        if not self.applicable:
            return None
        if self.relation == "<=":
            return self.slack >= -self.tol
        if self.relation == "==":
            return abs(self.slack) <= self.tol
        raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class BoundReport:
    instance_id: str
    cost_kind: str
    cl_value: float
    gm_value: float
    gm_approx_value: float
    dist_medians: float
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> int:
        return sum(c.passed is False for c in self.checks)


@dataclass(frozen=True)
class _Quantities:
    cl: float
    gm: float
    gm_approx: float
    dist: float
    approx: MedianResult
    exact: MedianResult


def _quantities(s: GraphSet, cost: CostSpec, mode: str, pivot: int,
                budget: int, workers: int, exact: Optional[MedianResult] = None) -> _Quantities:
    approx = approximated_median(s, cost, mode, pivot=pivot, budget=budget, workers=workers)
    if exact is None:
        exact = exact_generalized_median(s, cost, budget=budget, workers=workers)
    dist, _, _ = pairwise_distance(approx.median, exact.median, cost)
    return _Quantities(cl=approx.permutations.objective_value, gm=exact.gm_value,
                       gm_approx=approx.gm_value, dist=dist, approx=approx, exact=exact)


def _report(instance_id: str, cost: CostSpec, q: _Quantities, checks: list[Check]) -> BoundReport:
    return BoundReport(instance_id, str(cost), q.cl, q.gm, q.gm_approx, q.dist, tuple(checks))


def _require(cost: CostSpec, metric: bool, what: str) -> None:
    if cost.is_metric != metric:
        need = "a metric cost (abs)" if metric else "the squared cost (sq)"
        raise HypothesisError(f"{what} requires {need}, got {cost}")


def _thm1_checks(q: _Quantities, tol: float) -> list[Check]:
    return [
        Check("thm1_a_gm_approx_le_cl", q.gm_approx, "<=", q.cl, tol),
        Check("thm1_b_gm_le_gm_approx", q.gm, "<=", q.gm_approx, tol),
        Check("thm1_c_half_cl_le_gm", 0.5 * q.cl, "<=", q.gm, tol),
    ]


def _thm2_checks(q: _Quantities, tol: float) -> list[Check]:
    return [
        Check("thm2_a_dist_le_2cl", q.dist, "<=", 2.0 * q.cl, tol),
        Check("thm2_b_2cl_le_4gm", 2.0 * q.cl, "<=", 4.0 * q.gm, tol),
    ]


def _thm3_checks(q: _Quantities, tol: float) -> list[Check]:
    return [
        Check("thm3_a_half_cl_eq_gm", 0.5 * q.cl, "==", q.gm, tol),
        Check("thm3_b_gm_approx_eq_gm", q.gm_approx, "==", q.gm, tol),
        Check("thm3_c_gm_approx_le_cl", q.gm_approx, "<=", q.cl, tol),
    ]


def _cor1_checks(q: _Quantities, epsilon: Optional[float], tol: float) -> list[Check]:
    eps = q.gm_approx if epsilon is None else float(epsilon)
    return [Check("cor1_dist_le_3eps", q.dist, "<=", 3.0 * eps, tol,
                  applicable=q.gm_approx <= eps + tol)]


def _cor2_checks(q: _Quantities, tol: float) -> list[Check]:
    return [
        Check("cor2_a_gm_approx_le_cl", q.gm_approx, "<=", q.cl, tol),
        Check("cor2_b_gm_le_gm_approx", q.gm, "<=", q.gm_approx, tol),
        Check("cor2_c_dist_le_2cl", q.dist, "<=", 2.0 * q.cl, tol),
    ]


def verify_theorem1(s: GraphSet, cost: CostSpec = SUM_ABS, *, instance_id: str = "",
                    tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET,
                    workers: int = 1) -> BoundReport:
    """CL >= GM({approx median}) >= GM >= CL / 2 under a metric cost."""
    _require(cost, True, "theorem 1")
    q = _quantities(s, cost, "exact", 0, budget, workers)
    return _report(instance_id, cost, q, _thm1_checks(q, tol))


def verify_theorem2(s: GraphSet, cost: CostSpec = SUM_ABS, *, instance_id: str = "",
                    tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET,
                    workers: int = 1) -> BoundReport:
    """d(approx median, median) <= 2 CL <= 4 GM under a metric cost."""
    _require(cost, True, "theorem 2")
    q = _quantities(s, cost, "exact", 0, budget, workers)
    return _report(instance_id, cost, q, _thm2_checks(q, tol))


def verify_theorem3(s: GraphSet, cost: CostSpec = SUM_SQ, *, instance_id: str = "",
                    tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET,
                    workers: int = 1) -> BoundReport:
    """CL / 2 == GM and GM({approx median}) == GM under the squared cost.

    Also asserts CL >= GM({approx median}), which needs only the optimality
    of the synthesised median and therefore holds for the squared cost too.
    """
    _require(cost, False, "theorem 3")
    q = _quantities(s, cost, "exact", 0, budget, workers)
    return _report(instance_id, cost, q, _thm3_checks(q, tol))


def verify_corollary1(s: GraphSet, epsilon: Optional[float] = None,
                      cost: CostSpec = SUM_ABS, *, instance_id: str = "",
                      tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET,
                      workers: int = 1) -> BoundReport:
    """If GM({approx median}) <= epsilon then d(approx median, median) <= 3 epsilon.

    ``epsilon`` defaults to GM({approx median}) itself, the tightest value
    for which the hypothesis holds.  When the hypothesis fails the check is
    reported as not applicable.
    """
    _require(cost, True, "corollary 1")
    q = _quantities(s, cost, "exact", 0, budget, workers)
    return _report(instance_id, cost, q, _cor1_checks(q, epsilon, tol))


def verify_corollary2(s: GraphSet, pivot: int = 0, cost: CostSpec = SUM_ABS, *,
                      instance_id: str = "", tol: float = DEFAULT_TOL,
                      budget: int = DEFAULT_BUDGET, workers: int = 1) -> BoundReport:
    """Bounds for a heuristic (possibly suboptimal) labelling with value CL'.

    CL' >= GM({approx median'}) >= GM and d(approx median', median) <= 2 CL'.
    ``pivot`` is 0-based.
    """
    _require(cost, True, "corollary 2")
    q = _quantities(s, cost, "heuristic", pivot, budget, workers)
    return _report(instance_id, cost, q, _cor2_checks(q, tol))


THEOREMS = ("1", "2", "3", "c1", "c2")


def verify(s: GraphSet, theorem: str, *, cost: Optional[CostSpec] = None,
           instance_id: str = "", tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET,
           workers: int = 1, epsilon: Optional[float] = None, pivot: int = 0) -> BoundReport:
    """Dispatch by theorem label; ``cost`` defaults to the one the result is about."""
    kw = dict(instance_id=instance_id, tol=tol, budget=budget, workers=workers)
    if theorem == "1":
        return verify_theorem1(s, cost or SUM_ABS, **kw)
    if theorem == "2":
        return verify_theorem2(s, cost or SUM_ABS, **kw)
    if theorem == "3":
        return verify_theorem3(s, cost or SUM_SQ, **kw)
    if theorem == "c1":
        return verify_corollary1(s, epsilon, cost or SUM_ABS, **kw)
    if theorem == "c2":
        return verify_corollary2(s, pivot, cost or SUM_ABS, **kw)
    raise ValueError(f"unknown theorem {theorem!r}; choose from {THEOREMS}")


def verify_all(s: GraphSet, *, instance_id: str = "", tol: float = DEFAULT_TOL,
               budget: int = DEFAULT_BUDGET, workers: int = 1,
               epsilon: Optional[float] = None, pivot: int = 0) -> list[BoundReport]:
    """Run every check on ``s``, sharing solver work between them.

    Theorems 1, 2 and both corollaries use the absolute cost; theorem 3 uses
    the squared cost.
    """
    q_abs = _quantities(s, SUM_ABS, "exact", 0, budget, workers)
    q_sq = _quantities(s, SUM_SQ, "exact", 0, budget, workers)
    q_heur = _quantities(s, SUM_ABS, "heuristic", pivot, budget, workers, exact=q_abs.exact)
    return [
        _report(instance_id, SUM_ABS, q_abs,
                _thm1_checks(q_abs, tol) + _thm2_checks(q_abs, tol) + _cor1_checks(q_abs, epsilon, tol)),
        _report(instance_id, SUM_SQ, q_sq, _thm3_checks(q_sq, tol)),
        _report(instance_id, SUM_ABS, q_heur, _cor2_checks(q_heur, tol)),
    ]
