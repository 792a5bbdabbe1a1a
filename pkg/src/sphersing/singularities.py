"""Singularity predicates for spherical embeddings, with certificates.

Verdicts use ``True`` / ``False`` and ``None`` for "not applicable" (terminal,
canonical and log terminal presuppose Q-Gorenstein) or "undetermined"
(smoothness of a locally factorial fan with colors).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import lattice as lt
from .coloredfan import ColoredFan, decolor_and_resolve
from .cones import truncated_lattice_points
from .divisors import BWeilDivisor, CartierResult, anticanonical, cartier_data, zero_divisor
from .errors import ContractViolation, DependentFamily, NotEffective, NotQCartier, NotQGorenstein
from .feasibility import maximize


@dataclass(frozen=True)
class Discrepancy:
    ray: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class FactorialityResult:
    q_factorial: bool
    locally_factorial: bool
    failing_cone: int | None = None
    reason: str = ""
    completions: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.locally_factorial:
            return "locally_factorial"
        return "q_factorial" if self.q_factorial else "neither"


def cone_family(fan: ColoredFan, i: int) -> list[tuple[int, ...]]:
    cc = fan.cones[i]
    return list(cc.colorless_rays(fan.space)) + [fan.space.sigma(c) for c in sorted(cc.colors)]


def factoriality(fan: ColoredFan) -> FactorialityResult:
    space = fan.space
    q_fact = True
    completions = {}
    first_fail = None
    for i, cc in enumerate(fan.cones):
        images = [space.sigma(c) for c in cc.colors]
        if len(set(images)) != len(images):
            return FactorialityResult(False, False, i, "two colors of the cone share an image")
        family = cone_family(fan, i)
        if family and lt.rank(family) != len(family):
            return FactorialityResult(False, False, i, "colorless rays and color images are linearly dependent")
        try:
            completions[i] = lt.extend_to_basis(family, fan.rank)
        except Exception as exc:  # NotSaturated
            if first_fail is None:
                first_fail = (i, f"family is not part of a lattice basis ({exc})")
    if first_fail is not None:
        return FactorialityResult(q_fact, False, first_fail[0], first_fail[1])
    return FactorialityResult(True, True, completions=completions)


@dataclass(frozen=True)
class GorensteinResult:
    gorenstein: bool
    q_gorenstein: bool
    certificates: tuple | None = None  # m_C per maximal cone
    failing_cone: int | None = None

    @property
    def verdict(self) -> str:
        if self.gorenstein:
            return "gorenstein"
        return "q_gorenstein" if self.q_gorenstein else "neither"


def gorenstein(fan: ColoredFan) -> GorensteinResult:
    K = anticanonical(fan)
    integral = cartier_data(fan, K, integral=True)
    if integral:
        return GorensteinResult(True, True, integral.pl.pieces)
    rational = cartier_data(fan, K, integral=False)
    if rational:
        return GorensteinResult(False, True, rational.pl.pieces, integral.failing_cone)
    return GorensteinResult(False, False, None, rational.failing_cone)


def _anticanonical_pl(fan: ColoredFan):
    res = cartier_data(fan, anticanonical(fan), integral=False)
    if not res:
        raise NotQGorenstein(res.reason)
    return res.pl


@dataclass(frozen=True)
class TerminalResult:
    verdict: str  # "terminal" | "canonical_not_terminal" | "not_canonical"
    witness: tuple[int, ...] | None = None
    witness_value: Fraction | None = None
    witness_cone: int | None = None

    @property
    def terminal(self) -> bool:
        return self.verdict == "terminal"

    @property
    def canonical(self) -> bool:
        return self.verdict != "not_canonical"


def terminal_canonical(fan: ColoredFan) -> TerminalResult:
    """Decide terminal/canonical by enumerating lattice points of C cap V with h_C <= 1."""
    pl = _anticanonical_pl(fan)
    V = fan.space.valuation_cone
    non_terminal = None
    for i, cc in enumerate(fan.cones):
        h = pl.pieces[i]
        rays = set(cc.colorless_rays(fan.space))
        for x in truncated_lattice_points(cc.cone.intersect(V), h):
            hx = lt.dot(h, x)
            if hx < 1:
                return TerminalResult("not_canonical", x, hx, i)
            if x not in rays and non_terminal is None:
                non_terminal = TerminalResult("canonical_not_terminal", x, hx, i)
    return non_terminal or TerminalResult("terminal")


def discrepancies(fan: ColoredFan, resolution: ColoredFan | None = None) -> list[Discrepancy]:
    """a_i = h_C(rho) - 1 for every exceptional ray rho of a colorless smooth resolution."""
    pl = _anticanonical_pl(fan)
    R = resolution or decolor_and_resolve(fan)
    stable = set(fan.colorless_rays)
    out = []
    for rho in R.colorless_rays:
        if rho in stable:
            continue
        out.append(Discrepancy(rho, pl(rho) - 1))
    return out


def discrepancy_verdict(ds: list[Discrepancy]) -> str:
    if all(d.value > 0 for d in ds):
        return "terminal"
    if all(d.value >= 0 for d in ds):
        return "canonical_not_terminal"
    return "not_canonical"


def log_terminal(fan: ColoredFan, ds: list[Discrepancy] | None = None) -> bool | None:
    """True for every Q-Gorenstein spherical variety, None when not Q-Gorenstein.

    The discrepancies (computed unless given) are checked to exceed -1.
    """
    if not gorenstein(fan).q_gorenstein:
        return None
    bad = [d for d in (discrepancies(fan) if ds is None else ds) if d.value <= -1]
    if bad:
        raise ContractViolation(f"discrepancy <= -1 on a spherical variety: {bad}")
    return True


def log_canonical_divisor(fan: ColoredFan, D: BWeilDivisor) -> BWeilDivisor:
    """-(K_X + D) for a boundary D."""
    return anticanonical(fan) - D.normalized(fan)


def klt_check(fan: ColoredFan, D: BWeilDivisor, resolution: ColoredFan | None = None) -> bool:
    """Whether (X, D) is klt, computed on the colorless resolution.

    Strict transforms contribute -d (G-stable parts) and -c_D (colors), which
    exceed -1 exactly when the round-down of D is zero; exceptional rays
    contribute h(rho) - 1 for the support function of -(K_X + D).
    """
    D = D.normalized(fan)
    if not D.is_effective():
        raise NotEffective("boundary divisor must be effective")
    res = cartier_data(fan, log_canonical_divisor(fan, D), integral=False)
    if not res:
        raise NotQCartier(f"K_X + D is not Q-Cartier: {res.reason}")
    R = resolution or decolor_and_resolve(fan)
    stable = set(fan.colorless_rays)
    exceptional_ok = all(res.pl(rho) > 0 for rho in R.colorless_rays if rho not in stable)
    klt = D.round_down_is_zero() and exceptional_ok
    if fan.space.is_horospherical and klt != D.round_down_is_zero():
        raise ContractViolation("klt verdict disagrees with the horospherical criterion")
    return klt


@dataclass(frozen=True)
class BoundarySystem:
    """Linear conditions on (boundary coefficients, one covector per cone) making K_X + D Q-Cartier.

    Column layout: colorless rays, then colors of the space, then r columns
    per maximal cone. Covector columns are free; coefficient columns are >= 0.
    """

    rays: tuple
    colors: tuple
    n_vars: int
    A_eq: tuple
    b_eq: tuple

    @property
    def n_boundary(self) -> int:
        return len(self.rays) + len(self.colors)

    @property
    def free(self) -> list[int]:
        return list(range(self.n_boundary, self.n_vars))

    def divisor(self, x, fan: ColoredFan) -> BWeilDivisor:
        k = len(self.rays)
        return BWeilDivisor(
            {ray: x[i] for i, ray in enumerate(self.rays)},
            {name: x[k + i] for i, name in enumerate(self.colors)},
        ).normalized(fan)


def boundary_system(fan: ColoredFan) -> BoundarySystem:
    space = fan.space
    r = fan.rank
    rays = tuple(fan.colorless_rays)
    colors = tuple(space.color_names)
    nb = len(rays) + len(colors)
    n = nb + r * len(fan.cones)
    A_eq, b_eq = [], []
    for i, cc in enumerate(fan.cones):
        base = nb + r * i
        for x in cc.colorless_rays(space):
            row = [0] * n
            row[rays.index(x)] = 1
            row[base:base + r] = x
            A_eq.append(row)
            b_eq.append(1)
        for c in sorted(cc.colors):
            row = [0] * n
            row[len(rays) + colors.index(c)] = 1
            row[base:base + r] = space.sigma(c)
            A_eq.append(row)
            b_eq.append(space.color(c).a_D)
    # m_C is the covector of -(K_X + D) on the cone: <m_C, x> = 1 - d_x
    return BoundarySystem(rays, colors, n, tuple(map(tuple, A_eq)), tuple(b_eq))


def find_klt_pair(fan: ColoredFan) -> BWeilDivisor | None:
    """An effective D with round-down 0 and K_X + D Q-Cartier, or None if none exists.

    The strict bound d < 1 is handled by maximizing a common slack t in
    d + t <= 1; a pair exists iff the optimum is positive. A second pass
    minimizes the total coefficient under d <= 1 - t*/2 to return a small witness.
    """
    if gorenstein(fan).q_gorenstein:
        return zero_divisor(fan)
    sys_ = boundary_system(fan)
    nb, n = sys_.n_boundary, sys_.n_vars
    t = n  # slack column appended after the system's columns
    A_eq = [list(row) + [0] for row in sys_.A_eq]
    A_ub = []
    for k in range(nb):
        row = [0] * (n + 1)
        row[k] = 1
        row[t] = 1
        A_ub.append(row)
    c = [0] * (n + 1)
    c[t] = 1
    res = maximize(c, A_ub, [1] * nb, A_eq, sys_.b_eq, sys_.free)
    if res.status != "optimal" or res.value <= 0:
        return None
    bound = 1 - res.value / 2
    A_ub2 = [row[:t] for row in A_ub]
    c2 = [-1] * nb + [0] * (n - nb)
    res2 = maximize(c2, A_ub2, [bound] * nb, sys_.A_eq, sys_.b_eq, sys_.free)
    x = res2.x if res2.status == "optimal" else res.x
    return sys_.divisor(x, fan)


def smooth_status(fan: ColoredFan, fact: FactorialityResult | None = None) -> bool | None:
    fact = fact or factoriality(fan)
    if not fan.colors:
        return fact.locally_factorial
    if not fact.locally_factorial:
        return False
    return None


@dataclass
class SingularityReport:
    q_factorial: bool
    locally_factorial: bool
    q_gorenstein: bool
    gorenstein: bool
    terminal: bool | None
    canonical: bool | None
    log_terminal: bool | None
    smooth: bool | None
    klt_pair: BWeilDivisor | None = None
    klt_pair_exists: bool | None = None
    certificates: dict[str, Any] = field(default_factory=dict)
    discrepancies: list[Discrepancy] | None = None

    def check_implications(self) -> list[str]:
        """Violated arrows of the implication diagram (empty when consistent)."""
        bad = []

        def arrow(name, premise, conclusion):
            if premise is True and conclusion is not True:
                bad.append(name)

        arrow("locally factorial => Q-factorial", self.locally_factorial, self.q_factorial)
        arrow("locally factorial => Gorenstein", self.locally_factorial, self.gorenstein)
        arrow("locally factorial => terminal", self.locally_factorial, self.terminal)
        arrow("Gorenstein => Q-Gorenstein", self.gorenstein, self.q_gorenstein)
        arrow("Q-factorial => Q-Gorenstein", self.q_factorial, self.q_gorenstein)
        arrow("Gorenstein => canonical", self.gorenstein, self.canonical)
        arrow("terminal => canonical", self.terminal, self.canonical)
        arrow("canonical => log terminal", self.canonical, self.log_terminal)
        arrow("Q-Gorenstein => log terminal", self.q_gorenstein, self.log_terminal)
        arrow("smooth => locally factorial", self.smooth, self.locally_factorial)
        arrow("smooth => terminal", self.smooth, self.terminal)
        return bad

    @property
    def label(self) -> str:
        return classification_label(self)


def classify(fan: ColoredFan, with_discrepancies: bool = True) -> SingularityReport:
    fact = factoriality(fan)
    gor = gorenstein(fan)
    certs: dict[str, Any] = {
        "factoriality": fact,
        "gorenstein": gor,
    }
    terminal = canonical = lt_ = None
    ds = None
    klt_pair = None
    if gor.q_gorenstein:
        term = terminal_canonical(fan)
        certs["terminal_canonical"] = term
        terminal, canonical = term.terminal, term.canonical
        if with_discrepancies:
            ds = discrepancies(fan)
        lt_ = log_terminal(fan, ds) if with_discrepancies else True
        klt_pair = zero_divisor(fan)
    else:
        klt_pair = find_klt_pair(fan)
    report = SingularityReport(
        q_factorial=fact.q_factorial,
        locally_factorial=fact.locally_factorial,
        q_gorenstein=gor.q_gorenstein,
        gorenstein=gor.gorenstein,
        terminal=terminal,
        canonical=canonical,
        log_terminal=lt_,
        smooth=smooth_status(fan, fact),
        klt_pair=klt_pair,
        klt_pair_exists=klt_pair is not None,
        certificates=certs,
        discrepancies=ds,
    )
    bad = report.check_implications()
    if bad:
        raise ContractViolation(f"implication diagram violated: {bad}")
    return report


def classification_label(rep: SingularityReport) -> str:
    """One-line label listing only the strongest properties, as in the SL3/U example list."""
    if rep.smooth:
        return "Smooth"
    if rep.locally_factorial:
        return "Locally factorial (and terminal singularities)"
    if not rep.q_gorenstein:
        if rep.klt_pair_exists:
            return "Not Q-Gorenstein, there exists klt pairs"
        return "Not Q-Gorenstein, there exists no klt pair"
    if rep.q_factorial:
        head = "Q-factorial, Gorenstein" if rep.gorenstein else "Q-factorial, not Gorenstein"
    else:
        head = "Not Q-factorial, Gorenstein" if rep.gorenstein else "Q-Gorenstein"
    if rep.terminal:
        return head + ", terminal singularities"
    if rep.canonical:
        return head + (" (and canonical singularities)" if rep.gorenstein else ", canonical singularities")
    return head + " (and log terminal singularities)"


LABELS = (
    "Smooth",
    "Locally factorial (and terminal singularities)",
    "Q-factorial, not Gorenstein, terminal singularities",
    "Q-factorial, not Gorenstein (and log terminal singularities)",
    "Q-factorial, Gorenstein (and canonical singularities)",
    "Not Q-factorial, Gorenstein, terminal singularities",
    "Q-Gorenstein (and log terminal singularities)",
    "Q-Gorenstein, terminal singularities",
    "Not Q-Gorenstein, there exists no klt pair",
    "Not Q-Gorenstein, there exists klt pairs",
)
