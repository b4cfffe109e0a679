"""The worst-case LP over normalized path counts, in exact arithmetic.

Variables ``m_1..m_imax`` (``m[i - 1]``) are expected path counts divided by
|OPT|:

    minimize    sum_i c_i m_i,          c_i = 1/(2^i - 1) + i - 1
    subject to  sum_{i>=2} a_i m_i <= 1, a_i = i 2^i / (2^i - 1)
                sum_i i m_i = 1,  m >= 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def out_coeff(i: int) -> Fraction:
    """Expected |OUT| lower bound per length-(2i-1) path (i=1: per OPT edge)."""
    return Fraction(1, 2**i - 1) + i - 1


def opt_coeff(i: int) -> Fraction:
    return Fraction(i * 2**i, 2**i - 1)


def lemma_prob_bound(k: int) -> Fraction:
    """Lower bound on Pr[Bob holds all k OPT edges of a path]."""
    return Fraction(1, 2**k - 1)


def lemma_mean_bound(k: int) -> Fraction:
    """Lower bound on the expected number of the path's OPT edges Bob holds."""
    return Fraction(k * 2 ** (k - 1), 2**k - 1)


@dataclass(frozen=True)
class LPInstance:
    i_max: int
    c: tuple[Fraction, ...]
    a: tuple[Fraction, ...]  # a[0] = 0: m_1 is absent from the first constraint
    w: tuple[int, ...]

    def objective(self, m: Sequence[Fraction]) -> Fraction:
        return sum((ci * mi for ci, mi in zip(self.c, m)), Fraction(0))

    def constraint_values(self, m: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
        lhs1 = sum((ai * mi for ai, mi in zip(self.a, m)), Fraction(0))
        lhs2 = sum((wi * mi for wi, mi in zip(self.w, m)), Fraction(0))
        return lhs1, lhs2

    def is_feasible(self, m: Sequence[Fraction]) -> bool:
        if len(m) != self.i_max or any(x < 0 for x in m):
            return False
        lhs1, lhs2 = self.constraint_values(m)
        return lhs1 <= 1 and lhs2 == 1


@dataclass(frozen=True)
class LPSolution:
    m: tuple[Fraction, ...]
    objective: Fraction

    def to_dict(self) -> dict:
        return {
            "m": [{"num": x.numerator, "den": x.denominator} for x in self.m],
            "value": {"num": self.objective.numerator, "den": self.objective.denominator,
                      "dec": format(float(self.objective), ".12g")},
        }


def build_lp(i_max: int) -> LPInstance:
    if i_max < 2:
        raise ValueError("i_max must be at least 2")
    idx = range(1, i_max + 1)
    return LPInstance(
        i_max,
        tuple(out_coeff(i) for i in idx),
        tuple(Fraction(0) if i == 1 else opt_coeff(i) for i in idx),
        tuple(idx),
    )


def make_solution(lp: LPInstance, m: Sequence) -> LPSolution:
    m = tuple(Fraction(x) for x in m)
    return LPSolution(m, lp.objective(m))


def reduce_solution(lp: LPInstance, sol: LPSolution, require_feasible: bool = True) -> LPSolution:
    """Move the mass of every m_j (j >= 3) onto m_1 and m_2.

    For each such j: m_2 += (3/8) j m_j 2^j/(2^j - 1) and
    m_1 += j m_j (1 - (3/4) 2^j/(2^j - 1)); then m_j = 0. The first
    constraint's left side and the equality are preserved exactly, so with
    ``require_feasible=False`` the map can be applied to points that only
    satisfy the equality.
    """
    if require_feasible and not lp.is_feasible(sol.m):
        raise ValueError("reduce_solution needs a feasible point")
    m = list(sol.m)
    for j in range(3, lp.i_max + 1):
        mj = m[j - 1]
        if not mj:
            continue
        r = Fraction(2**j, 2**j - 1)
        m[1] += Fraction(3, 8) * mj * j * r
        m[0] += j * mj * (1 - Fraction(3, 4) * r)
        m[j - 1] = Fraction(0)
    return make_solution(lp, m)


def solve_lp(lp: LPInstance) -> LPSolution:
    """Closed-form optimum on support {1, 2}.

    With m_1 = 1 - 2 m_2 the objective is 1 - (2/3) m_2, so m_2 is pushed to
    its cap 1/a_2 = 3/8.
    """
    m2 = 1 / lp.a[1]
    m = [Fraction(0)] * lp.i_max
    m[0], m[1] = 1 - 2 * m2, m2
    return make_solution(lp, m)


def solve_lp_simplex(lp: LPInstance) -> LPSolution:
    """Generic exact simplex over all ``i_max`` variables (cross-check)."""
    import sympy

    xs = sympy.symbols(f"m1:{lp.i_max + 1}")

    def q(f: Fraction):
        return sympy.Rational(f.numerator, f.denominator)

    obj = sum(q(c) * x for c, x in zip(lp.c, xs))
    cons = [
        sum(q(a) * x for a, x in zip(lp.a, xs)) <= 1,
        sympy.Eq(sum(w * x for w, x in zip(lp.w, xs)), 1),
        *(x >= 0 for x in xs),
    ]
    from sympy.solvers.simplex import lpmin

    value, point = lpmin(obj, cons)
    m = [Fraction(int(sympy.numer(point[x])), int(sympy.denom(point[x]))) for x in xs]
    sol = make_solution(lp, m)
    if sol.objective != Fraction(int(sympy.numer(value)), int(sympy.denom(value))):
        raise RuntimeError("simplex point and value disagree")
    return sol
