"""Closed-form curves for forbidden cycle powers, their maxima, and the
supporting integer facts.

The upper-bound curve gamma is a pointwise minimum of one rational branch
per independent-set count a (the branch through the pair (a, ell(a)-1)) and,
when t+1 does not divide h, the linear chromatic branch p/(t+1).  The
a = 0 branch simplifies to (1-p)/(ell(0)-1), which also serves as its value
at p = 0.  The edit distance function itself equals gamma on the covered
range: everywhere when t+1 does not divide h, and for p >= p0 otherwise;
outside that range the value is reported as not covered, never guessed.

Everything evaluates exactly over rationals when given rational p, and the
fact sweeps below clear denominators so that every comparison is an integer
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, sqrt
from typing import Callable, Sequence

from .errors import NonConcavityError, ParameterDomainError
from .graphs import PowerCycleParams
from .rationals import Number

MAX_STORED_FAILURES = 20


def _one_like(p: Number) -> Number:
    return Fraction(1) if isinstance(p, (Fraction, int)) else 1.0


def gamma_range_ok(params: PowerCycleParams) -> bool:
    return params.h >= max(params.t * (params.t + 1), 4)


def ed_range_ok(params: PowerCycleParams) -> bool:
    return params.h >= 2 * params.t * (params.t + 1) + 1


def _require_gamma_range(params: PowerCycleParams) -> None:
    if not gamma_range_ok(params):
        bound = max(params.t * (params.t + 1), 4)
        raise ParameterDomainError(
            f"closed-form gamma needs h >= max(t(t+1), 4) = {bound}, got h={params.h}"
        )


def branch_values(params: PowerCycleParams, p: Number) -> list[tuple[str, Number]]:
    """Every branch of the closed-form curve at p, in tie-breaking order.

    Branch "a=..." is the curve through the spectrum pair (a, ell(a)-1); the
    "chromatic" branch through (t+1, 0) exists only when t+1 does not
    divide h.  The order matches the lexicographic order of those pairs.
    """
    if not 0 <= p <= 1:
        raise ParameterDomainError(f"p={p} outside [0, 1]")
    _require_gamma_range(params)
    one = _one_like(p)
    t = params.t
    out = [("a=0", (one - p) / (params.ell(0) - 1))]
    for a in range(1, t + 1):
        la = params.ell(a)
        out.append((f"a={a}", (one * p) * (one - p) / (a * (one - p) + (la - 1) * p)))
    if not params.divisible:
        out.append(("chromatic", (one * p) / (t + 1)))
    return out


def gamma_closed_with_branch(params: PowerCycleParams, p: Number) -> tuple[Number, str]:
    best_label, best = None, None
    for label, value in branch_values(params, p):
        if best is None or value < best:
            best_label, best = label, value
    return best, best_label


def gamma_closed(params: PowerCycleParams, p: Number) -> Number:
    return gamma_closed_with_branch(params, p)[0]


def ed_closed(params: PowerCycleParams, p: Number) -> Number | None:
    """Closed-form edit distance value, or None where equality is not covered.

    Requires h >= 2t(t+1)+1.  When t+1 divides h the equality with gamma is
    only available for p >= p0 = 1/ell(t).
    """
    if not ed_range_ok(params):
        raise ParameterDomainError(
            f"closed-form edit distance needs h >= 2t(t+1)+1 = "
            f"{2 * params.t * (params.t + 1) + 1}, got h={params.h}"
        )
    if not ed_covered(params, p):
        return None
    return gamma_closed(params, p)


def ed_covered(params: PowerCycleParams, p: Number) -> bool:
    return not params.divisible or p >= params.p0


def ed_cycles_closed(h: int, p: Number) -> Number | None:
    """Edit distance of a forbidden ordinary cycle (t = 1), or None off-range.

    Odd h: min of p/2 and the two rational branches, for all p.  Even h: the
    two rational branches, for p at least 1/ceil(h/3).
    """
    if h < 5:
        raise ParameterDomainError(f"cycle closed form needs h >= 5, got {h}")
    if not 0 <= p <= 1:
        raise ParameterDomainError(f"p={p} outside [0, 1]")
    params = PowerCycleParams(h, 1)
    one = _one_like(p)
    l0, l1 = params.ell(0), params.ell(1)
    middle = (one * p) * (one - p) / ((one - p) + (l1 - 1) * p)
    last = (one - p) / (l0 - 1)
    if h % 2 == 0:
        if p < Fraction(1, l1):
            return None
        return min(middle, last)
    return min((one * p) / 2, middle, last)


def gamma_three_term(params: PowerCycleParams, p: Number) -> Number:
    """The curve reduced to the a=0 and a=t branches (plus the chromatic one).

    Valid once h >= 4t^2 + 10t + 24 (t >= 2): the middle branches are then
    dominated everywhere by these two.
    """
    t = params.t
    if t < 2:
        raise ParameterDomainError("three-term reduction needs t >= 2")
    if params.h < 4 * t * t + 10 * t + 24:
        raise ParameterDomainError(
            f"three-term reduction needs h >= 4t^2+10t+24 = "
            f"{4 * t * t + 10 * t + 24}, got h={params.h}"
        )
    if not 0 <= p <= 1:
        raise ParameterDomainError(f"p={p} outside [0, 1]")
    one = _one_like(p)
    lt = params.ell(t)
    values = [
        (one - p) / (params.ell(0) - 1),
        (one * p) * (one - p) / (t * (one - p) + (lt - 1) * p),
    ]
    if not params.divisible:
        values.append((one * p) / (t + 1))
    return min(values)


def black_part_g_bound(white_count: int, params: PowerCycleParams, p: Number) -> Number:
    """Largest g value the all-black part of a competitive CRG could have.

    A CRG with `white_count` white vertices beating every branch forces its
    black part below this bound; it is the reciprocal of the largest branch
    denominator shifted by the white-part contribution.
    """
    t = params.t
    if not 0 <= white_count <= t:
        raise ParameterDomainError(f"white_count={white_count} outside 0..{t}")
    if not 0 < p < 1:
        raise ParameterDomainError("bound needs 0 < p < 1")
    one = _one_like(p)
    best = max(
        (a2 - white_count) / (one * p) + (params.ell(a2) - 1) / (one - p)
        for a2 in range(t + 1)
    )
    return 1 / best


def branch_crossings(params: PowerCycleParams) -> list[Fraction]:
    """Exact p values in (0, 1) where two branches of the curve meet."""
    _require_gamma_range(params)
    t = params.t
    pairs = [(a, params.ell(a)) for a in range(t + 1)]
    crossings = set()
    for i, (a, la) in enumerate(pairs):
        for b, lb in pairs[i + 1 :]:
            rise, drop = b - a, la - lb
            if drop > 0:
                crossings.add(Fraction(rise, rise + drop))
        if not params.divisible:
            rise, drop = (t + 1) - a, la - 1
            if drop > 0 and rise > 0:
                crossings.add(Fraction(rise, rise + drop))
    return sorted(c for c in crossings if 0 < c < 1)


def default_p_grid(params: PowerCycleParams, samples: int = 201) -> list[Fraction]:
    """Uniform rational grid plus p0, 1/2, and all branch crossings."""
    if samples < 1:
        raise ParameterDomainError("need at least one sample")
    if samples == 1:
        grid = {Fraction(1, 2)}
    else:
        grid = {Fraction(k, samples - 1) for k in range(samples)}
    grid.update({params.p0, Fraction(1, 2)})
    grid.update(branch_crossings(params))
    return sorted(grid)


@dataclass(frozen=True)
class CurveSample:
    """One emitted row of the closed-form curve."""

    p: Number
    gamma: Number
    branch: str
    ed: Number | None
    ed_range_ok: bool  # h large enough for the equality result at all
    covered: bool  # p inside the range where the equality holds

    def to_json(self) -> dict:
        from .rationals import number_str

        return {
            "p": number_str(self.p),
            "gamma": number_str(self.gamma),
            "branch": self.branch,
            "ed": None if self.ed is None else number_str(self.ed),
            "ed_range_ok": self.ed_range_ok,
            "covered": self.covered,
        }


def curve_samples(
    params: PowerCycleParams, grid: Sequence[Number] | None = None
) -> list[CurveSample]:
    if grid is None:
        grid = default_p_grid(params)
    h_ok = ed_range_ok(params)
    samples = []
    for p in grid:
        value, branch = gamma_closed_with_branch(params, p)
        covered = h_ok and ed_covered(params, p)
        samples.append(
            CurveSample(p, value, branch, value if covered else None, h_ok, covered)
        )
    return samples


def curve_csv(samples: Sequence[CurveSample], search: Sequence[Number] | None = None) -> str:
    header = "p,gamma_closed,ed_closed,branch,covered"
    if search is not None:
        header += ",gamma_search"
    lines = [header]
    for idx, s in enumerate(samples):
        ed = "" if s.ed is None else f"{float(s.ed)!r}"
        row = f"{float(s.p)!r},{float(s.gamma)!r},{ed},{s.branch},{s.covered}"
        if search is not None:
            row += f",{float(search[idx])!r}"
        lines.append(row)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MaxPoint:
    p_star: float
    d_star: float
    method: str  # "ternary-search" | "closed-form"

    def to_json(self) -> dict:
        return {"p_star": self.p_star, "d_star": self.d_star, "method": self.method}


def max_point(
    curve: Callable[[Number], Number],
    *,
    lo: Number = 0,
    hi: Number = 1,
    tol: float = 1e-12,
    concavity_samples: int = 101,
) -> MaxPoint:
    """Maximum of a concave curve by ternary search.

    A three-point midpoint probe runs first; concavity failures raise rather
    than return a point the search cannot certify.  The bracket is kept in
    exact rationals when the curve accepts them, so value comparisons near
    the flat top never fall into float rounding noise; curves that insist on
    floats still work, at float precision.
    """
    a, b = Fraction(lo), Fraction(hi)
    try:
        curve(a)
        probe = curve
    except (TypeError, ValueError):
        probe = lambda p: curve(float(p))
    step = (b - a) / (concavity_samples - 1)
    values = [probe(a + i * step) for i in range(concavity_samples)]
    for i in range(concavity_samples - 2):
        if values[i + 1] < (values[i] + values[i + 2]) / 2 - Fraction(1, 10**9):
            raise NonConcavityError(
                f"midpoint concavity fails near p={float(a + (i + 1) * step)}"
            )
    while b - a > tol:
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        left, right = probe(m1), probe(m2)
        if left < right:
            a = m1
        elif left > right:
            b = m2
        else:
            a, b = m1, m2
    p_star = (a + b) / 2
    return MaxPoint(float(p_star), float(probe(p_star)), "ternary-search")


def cycle_peak_density(h: int) -> tuple[float, float]:
    """The two closed-form candidates for the peak density of a cycle curve.

    Returns (rational-form candidate, square-root-form candidate); which one
    is correct depends on h, and cycle_max_point picks by consistency with
    the ternary search.
    """
    if h < 4:
        raise ParameterDomainError("cycle curve needs h >= 4")
    rational_form = 1.0 / (ceil(h / 2) - ceil(h / 3) + 1)
    root_form = 1.0 / (1.0 + sqrt(ceil(h / 3) - 1))
    return rational_form, root_form


def cycle_max_point(h: int, *, tol: float = 1e-12) -> MaxPoint:
    """Peak of the closed-form curve for an ordinary cycle.

    Runs the ternary search, then returns whichever closed-form candidate
    agrees with it; the raw search result is returned when neither does.
    """
    params = PowerCycleParams(h, 1)
    curve = lambda p: gamma_closed(params, p)
    found = max_point(curve, tol=tol)
    for candidate in sorted(cycle_peak_density(h), key=lambda c: abs(c - found.p_star)):
        if abs(candidate - found.p_star) <= 1e-6:
            return MaxPoint(candidate, curve(candidate), "closed-form")
    return found


@dataclass
class FactCheck:
    """Tally of one arithmetic fact over its sweep."""

    name: str
    checked: int = 0
    failure_count: int = 0
    failures: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, count: int = 1) -> None:
        self.checked += count

    def fail(self, witness: tuple) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append(witness)

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "failures": self.failure_count,
            "witnesses": [list(w) for w in self.failures],
            "passed": self.passed,
        }


@dataclass
class FactsReport:
    facts: dict[str, FactCheck]

    @property
    def ok(self) -> bool:
        return all(f.passed for f in self.facts.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "facts": {name: f.to_json() for name, f in self.facts.items()},
        }


def _check_floor_ceiling_duality(fact: FactCheck, h_max: int, xy_max: int) -> None:
    # floor(h/x) >= y iff floor(h/y) >= x; ceil(h/x) <= y iff ceil(h/y) <= x
    for h in range(1, h_max + 1):
        floors = [0] + [h // d for d in range(1, xy_max + 1)]
        ceils = [0] + [-(-h // d) for d in range(1, xy_max + 1)]
        for x in range(1, xy_max + 1):
            fx, cx = floors[x], ceils[x]
            for y in range(1, xy_max + 1):
                fact.record()
                if (fx >= y) != (floors[y] >= x):
                    fact.fail(("floor", h, x, y))
                if (cx <= y) != (ceils[y] <= x):
                    fact.fail(("ceiling", h, x, y))


def _check_ceiling_floor_bound(fact: FactCheck, h_max: int, t_max: int) -> None:
    # ceil(h/(t+a+1)) <= floor(h/t) once h >= max(t(t-1), 2t+2), for a < t
    for t in range(1, t_max + 1):
        for h in range(max(t * (t - 1), 2 * t + 2), h_max + 1):
            floor_ht = h // t
            for a in range(t):
                fact.record()
                if -(-h // (t + a + 1)) > floor_ht:
                    fact.fail((t, h, a))


def _check_size_t_partition(fact: FactCheck, h_max: int, t_max: int) -> None:
    # Sets of size t or t+1 summing to h: the feasible part counts are exactly
    # the interval [ceil(h/(t+1)), floor(h/t)], every h >= t(t-1) admits a
    # partition, and the threshold is tight (h = t(t-1)-1 admits none).
    # Sporadic smaller h, such as multiples of t, are representable too, so
    # the threshold is a conductor, not a biconditional.
    for t in range(1, t_max + 1):
        threshold = t * (t - 1)
        for h in range(1, h_max + 1):
            fact.record()
            lo, hi = -(-h // (t + 1)), h // t
            feasible = {k for k in range(h + 1) if h - k * t >= 0 and k * (t + 1) - h >= 0}
            if feasible != set(range(lo, hi + 1)):
                fact.fail(("interval", t, h))
            if h >= threshold and not feasible:
                fact.fail(("conductor", t, h))
            for k in feasible:
                larger = h - k * t
                sizes = [t] * (k - larger) + [t + 1] * larger
                if len(sizes) != k or sum(sizes) != h:
                    fact.fail(("construction", t, h, k))
        if t >= 2 and threshold - 1 <= h_max:
            fact.record()
            h = threshold - 1
            if any(h - k * t >= 0 and k * (t + 1) - h >= 0 for k in range(h + 1)):
                fact.fail(("tightness", t, h))


def _check_late_linearity(fact: FactCheck, h_max: int, t_max: int, denom: int) -> None:
    # On p in [1/2, 1] the a=0 branch (1-p)/(ell0 - 1) is the smallest branch:
    # below p/(t+1) once h >= (t+1)^2 + 1, and below every a >= 1 branch once
    # h >= (t+1)(t+a) + 1.  Cross-multiplied into integer comparisons.
    half = denom - denom // 2
    for t in range(1, t_max + 1):
        for h in range(2 * t + 2, h_max + 1):
            l0 = -(-h // (t + 1))
            if h >= (t + 1) * (t + 1) + 1:
                fact.record(denom - half + 1)
                if not all(
                    (denom - u) * (t + 1) <= u * (l0 - 1)
                    for u in range(half, denom + 1)
                ):
                    for u in range(half, denom + 1):
                        if (denom - u) * (t + 1) > u * (l0 - 1):
                            fact.fail(("chromatic", t, h, u))
                            break
            for a in range(1, t + 1):
                if h < (t + 1) * (t + a) + 1:
                    continue
                la = -(-h // (t + a + 1))
                fact.record(denom - half + 1)
                if not all(
                    a * (denom - u) + (la - 1) * u <= (l0 - 1) * u
                    for u in range(half, denom + 1)
                ):
                    for u in range(half, denom + 1):
                        if a * (denom - u) + (la - 1) * u > (l0 - 1) * u:
                            fact.fail(("branch", t, h, a, u))
                            break


def _check_early_linearity(fact: FactCheck, h_max: int, t_max: int, denom: int) -> None:
    # On p in [0, p0] the chromatic branch p/(t+1) is the smallest branch:
    # (t+1-a)(1-p) >= (ell(a)-1) p for every a, checked on the rational grid
    # and exactly at p0 = 1/ell(t).
    for t in range(1, t_max + 1):
        for h in range(2 * t + 2, h_max + 1):
            lt = -(-h // (2 * t + 1))
            ells = [-(-h // (t + a + 1)) for a in range(t + 1)]
            u_cap = denom // lt
            for a in range(t + 1):
                la = ells[a]
                fact.record(u_cap + 2)
                if not all(
                    (t + 1 - a) * (denom - u) >= (la - 1) * u
                    for u in range(u_cap + 1)
                ):
                    for u in range(u_cap + 1):
                        if (t + 1 - a) * (denom - u) < (la - 1) * u:
                            fact.fail(("grid", t, h, a, u))
                            break
                if (t + 1 - a) * (lt - 1) < (la - 1):
                    fact.fail(("p0", t, h, a))


def _check_three_term_reduction(fact: FactCheck, h_max: int, t_values) -> None:
    # (ell0 - ell(a)) (t - a) >= (ell(a) - ell(t)) a for the middle branches
    for t in t_values:
        for h in range(4 * t * t + 10 * t + 24, h_max + 1):
            ells = [-(-h // (t + a + 1)) for a in range(t + 1)]
            for a in range(1, t):
                fact.record()
                if (ells[0] - ells[a]) * (t - a) < (ells[a] - ells[t]) * a:
                    fact.fail((t, h, a))


def verify_facts(
    *,
    h_max: int = 400,
    t_max: int = 8,
    xy_max: int = 60,
    p_denominator: int = 1000,
    three_term_t: Sequence[int] = (2, 3),
) -> FactsReport:
    """Sweep every supporting integer fact and report violations with witnesses."""
    facts = {
        name: FactCheck(name)
        for name in (
            "floor_ceiling_duality",
            "ceiling_floor_bound",
            "size_t_partition",
            "late_linearity",
            "early_linearity",
            "three_term_reduction",
        )
    }
    _check_floor_ceiling_duality(facts["floor_ceiling_duality"], h_max, xy_max)
    _check_ceiling_floor_bound(facts["ceiling_floor_bound"], h_max, t_max)
    _check_size_t_partition(facts["size_t_partition"], h_max, t_max)
    _check_late_linearity(facts["late_linearity"], h_max, t_max, p_denominator)
    _check_early_linearity(facts["early_linearity"], h_max, t_max, p_denominator)
    _check_three_term_reduction(
        facts["three_term_reduction"], h_max, [t for t in three_term_t if t >= 2]
    )
    return FactsReport(facts)
