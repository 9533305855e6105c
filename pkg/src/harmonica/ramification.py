"""Ramification data of harmonic quotients and the Riemann-Hurwitz identity.

All arithmetic is exact: integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .action import (
    ActionGroup,
    harmonic_violation,
    is_harmonic_action,
    quotient_from_elements,
)
from .errors import (
    ClassificationGap,
    FiberInconsistent,
    GenusTooSmall,
    HypothesisUnmet,
    NotHarmonic,
)
from .morphism import degree, multiplicities
from .multigraph import MultiGraph, genus

SEVEN_THIRDS = Fraction(7, 3)


@dataclass(frozen=True)
class VertexRecord:
    vertex: object
    stabilizer: int
    m: int
    v: int
    w: int


@dataclass(frozen=True)
class BranchPoint:
    vertex: object
    r: int
    w: int

    def contribution(self) -> Fraction:
        return 2 * (1 - Fraction(1, self.r)) + self.w


@dataclass(frozen=True)
class RamificationProfile:
    order: int
    genus: int
    quotient_genus: int
    vertices: tuple
    branch_points: tuple
    R: Fraction
    degree: int = 0
    quotient: MultiGraph | None = field(default=None, compare=False, repr=False)

    @property
    def s(self) -> int:
        """Branch points with horizontal ramification."""
        return sum(1 for b in self.branch_points if b.r > 1)

    @property
    def t(self) -> int:
        """Branch points with only vertical ramification."""
        return sum(1 for b in self.branch_points if b.r == 1 and b.w >= 1)

    @property
    def branch_vector(self) -> list:
        return sorted((b.r, b.w) for b in self.branch_points)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "genus": self.genus,
            "quotient_genus": self.quotient_genus,
            "branch_points": [{"r": r, "w": w} for r, w in self.branch_vector],
            "R": fraction_str(self.R),
        }


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def ramification_number(branch) -> Fraction:
    """Sum of ``2(1 - 1/r) + w`` over ``(r, w)`` pairs."""
    return sum((2 * (1 - Fraction(1, r)) + w for r, w in branch), Fraction(0))


def profile(G: MultiGraph, group: ActionGroup) -> RamificationProfile:
    if harmonic_violation(G, group.elements) is not None:
        raise NotHarmonic("profile requires a harmonic action")
    return profile_from_elements(G, group.elements)


def profile_from_elements(G: MultiGraph, elements) -> RamificationProfile:
    """Profile of a group given by its element permutations (assumed harmonic)."""
    Q, phi = quotient_from_elements(G, elements)
    order = len(elements)
    records = []
    fibers: dict = {}
    for i, x in enumerate(G.vertices):
        stab = sum(1 for g in elements if g[i] == i)
        m, v = multiplicities(phi, x)
        if m != stab:
            raise FiberInconsistent(f"horizontal multiplicity {m} != stabilizer order {stab} at {x!r}")
        if v % stab:
            raise FiberInconsistent(f"stabilizer order {stab} does not divide v = {v} at {x!r}")
        rec = VertexRecord(x, stab, m, v, v // stab)
        records.append(rec)
        y = phi.vidx[i]
        got = (rec.stabilizer, rec.w)
        if fibers.setdefault(y, got) != got:
            raise FiberInconsistent(f"(r, w) varies over the fiber of {Q.vertices[y]!r}")
    branch = tuple(
        BranchPoint(Q.vertices[y], r, w)
        for y, (r, w) in sorted(fibers.items())
        if r > 1 or w > 0
    )
    R = ramification_number((b.r, b.w) for b in branch)
    deg = degree(phi) if Q.num_edges else order
    return RamificationProfile(order, genus(G), genus(Q), tuple(records), branch, R, deg, Q)


def riemann_hurwitz_sides(p: RamificationProfile) -> dict:
    lhs = 2 * p.genus - 2
    vertex_sum = sum(2 * (r.m - 1) + r.v for r in p.vertices)
    return {
        "lhs": lhs,
        "vertex_form": p.order * (2 * p.quotient_genus - 2) + vertex_sum,
        "branch_form": p.order * (2 * p.quotient_genus - 2 + p.R),
    }


def verify_riemann_hurwitz(p: RamificationProfile) -> bool:
    """Both the per-vertex integer form and the branch-point rational form hold."""
    sides = riemann_hurwitz_sides(p)
    return sides["lhs"] == sides["vertex_form"] and sides["lhs"] == sides["branch_form"]


@dataclass(frozen=True)
class BranchCase:
    tag: str
    detail: object = None

    def __str__(self):
        return self.tag if self.detail is None else f"{self.tag}({self.detail})"


def classify_branch_vector(branch) -> BranchCase:
    """Classify a list of ``(r, w)`` branch pairs by the value of ``R``."""
    branch = sorted(branch)
    for r, w in branch:
        if r < 1 or w < 0 or (r == 1 and w == 0):
            raise ValueError(f"({r}, {w}) is not a branch point")
    R = ramification_number(branch)
    if R == 0:
        return BranchCase("R0_UNRAMIFIED")
    if R < 2:
        if len(branch) == 1:
            r, w = branch[0]
            if r >= 2 and w == 0:
                return BranchCase("RLT2_HORIZONTAL", r)
            if (r, w) == (1, 1):
                return BranchCase("RLT2_VERTICAL")
        raise ClassificationGap(f"R = {R} with branch vector {branch}")
    if R == 2:
        shapes = {
            ((2, 1),): "i",
            ((1, 2),): "i",
            ((2, 0), (2, 0)): "iia",
            ((1, 1), (1, 1)): "iib",
            ((1, 1), (2, 0)): "iic",
        }
        case = shapes.get(tuple(branch))
        if case is None:
            raise ClassificationGap(f"R = 2 with branch vector {branch}")
        return BranchCase("REQ2_CASE", case)
    if R < SEVEN_THIRDS:
        raise ClassificationGap(f"2 < R = {R} < 7/3 with branch vector {branch}")
    if R == SEVEN_THIRDS:
        shapes = {((3, 1),): "i", ((2, 0), (3, 0)): "ii", ((1, 1), (3, 0)): "iii"}
        case = shapes.get(tuple(branch))
        if case is None:
            raise ClassificationGap(f"R = 7/3 with branch vector {branch}")
        return BranchCase("RGT2_MIN", case)
    return BranchCase("RGT2_OTHER")


def classify_branch_locus(p: RamificationProfile) -> BranchCase:
    return classify_branch_vector(p.branch_vector)


def prime_factors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def check_prime_divisor_bound(p: RamificationProfile) -> bool:
    """Every prime dividing the group order is at most ``g + 1``."""
    if p.genus < 2:
        raise GenusTooSmall("the prime divisor bound needs genus >= 2")
    return all(q <= p.genus + 1 for q in prime_factors(p.order))


def check_cyclic_unramified(G: MultiGraph, C: ActionGroup, g1: int) -> bool:
    """For a harmonic p-cyclic action with g - 1 = p(g1 - 1), g1 > 1 and
    p > g1 + 1, the quotient map has no horizontal ramification."""
    p = C.order
    if not is_prime(p):
        raise HypothesisUnmet(f"group order {p} is not prime")
    if g1 <= 1:
        raise HypothesisUnmet("need g1 > 1")
    g = genus(G)
    if g - 1 != p * (g1 - 1):
        raise HypothesisUnmet(f"g - 1 = {g - 1} is not p(g1 - 1) = {p * (g1 - 1)}")
    if p <= g1 + 1:
        raise HypothesisUnmet(f"p = {p} is not greater than g1 + 1 = {g1 + 1}")
    if not is_harmonic_action(G, C):
        raise HypothesisUnmet("the cyclic action is not harmonic")
    return profile(G, C).s == 0


def check_gap_theorem(p: RamificationProfile) -> bool:
    """An order above 4(g-1) must equal 6(g-1), over a genus-0 quotient with R = 7/3."""
    if p.genus < 2:
        raise GenusTooSmall("the gap statement needs genus >= 2")
    low, high = 4 * (p.genus - 1), 6 * (p.genus - 1)
    if low < p.order < high:
        return False
    if p.order > low:
        return p.order == high and p.quotient_genus == 0 and p.R == SEVEN_THIRDS
    return True


def theorem_violations(p: RamificationProfile) -> list:
    """Every bound that should hold for a harmonic profile; returns failure messages."""
    bad = []
    if not verify_riemann_hurwitz(p):
        bad.append(f"Riemann-Hurwitz fails: {riemann_hurwitz_sides(p)}")
    if p.degree != p.order:
        bad.append(f"quotient degree {p.degree} != |group| {p.order}")
    if p.R < 0 or any(b.contribution() < 1 for b in p.branch_points):
        bad.append("a branch point contributes less than 1 to R")
    try:
        classify_branch_locus(p)
    except ClassificationGap as exc:
        bad.append(f"classification gap: {exc}")
    if 2 < p.R < SEVEN_THIRDS:
        bad.append(f"R = {p.R} lies strictly between 2 and 7/3")
    if p.genus >= 2:
        g = p.genus
        if p.order > 6 * (g - 1):
            bad.append(f"order {p.order} exceeds 6(g-1) = {6 * (g - 1)}")
        if not check_gap_theorem(p):
            bad.append(f"order {p.order} violates the 4(g-1)/6(g-1) gap")
        if not check_prime_divisor_bound(p):
            bad.append(f"order {p.order} has a prime factor above g+1 = {g + 1}")
        if p.quotient_genus >= 1:
            if p.R == 0 and p.order > g - 1:
                bad.append(f"unramified order {p.order} exceeds g-1")
            if p.R > 0 and p.order > 2 * g - 2:
                bad.append(f"ramified order {p.order} exceeds 2g-2 over a positive-genus quotient")
    return bad
