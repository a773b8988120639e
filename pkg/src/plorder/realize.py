"""Finite-scale dynamical realizations of preorder engines.

A frame is the radius-L ball of the group, deduplicated into residue
cosets and sorted by the engine's left-invariant order.  Elements act on
the frame by left multiplication; classify_empirical reads off the
dynamical type of an element from the trajectories of the frame extremes,
and classify_predicted derives the expected type from exact germ data.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .exactnum import Dyadic
from .plgroup import PLMap, ball
from .preorders import Sign


class DynType(enum.Enum):
    TOTALLY_BOUNDED = "TotallyBounded"
    EXPANDING_PSEUDOHOMOTHETY = "ExpandingPseudohomothety"
    CONTRACTING_PSEUDOHOMOTHETY = "ContractingPseudohomothety"
    HOMOTHETY_EXPANDING = "Homothety(expanding)"
    HOMOTHETY_CONTRACTING = "Homothety(contracting)"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value

    @property
    def conclusive(self) -> bool:
        return self is not DynType.INCONCLUSIVE


_COMPATIBLE = {
    (DynType.HOMOTHETY_EXPANDING, DynType.EXPANDING_PSEUDOHOMOTHETY),
    (DynType.HOMOTHETY_CONTRACTING, DynType.CONTRACTING_PSEUDOHOMOTHETY),
}


def consistent(predicted: DynType, empirical: DynType) -> bool:
    """Empirical evidence may be weaker than the prediction, never opposite."""
    if empirical is DynType.INCONCLUSIVE or predicted == empirical:
        return True
    return (predicted, empirical) in _COMPATIBLE


# ---------------------------------------------------------------------------
# Orbit frames
# ---------------------------------------------------------------------------

class OrbitFrame:
    """Sorted residue-coset representatives of a ball, with their words."""

    def __init__(self, engine, points, words: dict):
        self.engine = engine
        self.points = list(points)
        self.words = dict(words)
        self._inverses = {}

    def __len__(self):
        return len(self.points)

    def cmp_elements(self, u, v) -> int:
        """>0 iff the coset of u lies above the coset of v."""
        inv = self._inverses.get(v)
        if inv is None:
            inv = v.inverse()
            self._inverses[v] = inv
        return self.engine.sign(inv * u).value

    def locate(self, x) -> tuple[int, bool]:
        """(insertion index, found): binary search by engine comparison."""
        lo, hi = 0, len(self.points)
        while lo < hi:
            mid = (lo + hi) // 2
            c = self.cmp_elements(x, self.points[mid])
            if c == 0:
                return mid, True
            if c < 0:
                hi = mid
            else:
                lo = mid + 1
        return lo, False

    def index_of(self, x):
        i, found = self.locate(x)
        return i if found else None

    def coordinates(self) -> list[Dyadic]:
        """The standard integer embedding of the frame order."""
        return [Dyadic(i) for i in range(len(self.points))]

    def word_of(self, i: int) -> str:
        return self.words[self.points[i]]

    def __repr__(self):
        return f"OrbitFrame({len(self.points)} points, engine={self.engine!r})"


def build_frame(engine, generators: dict, basepoint=None, radius: int = 3) -> OrbitFrame:
    """Radius-L ball deduplicated into cosets and sorted by the engine.

    Deterministic: ball elements are processed by (word length, word), and
    the first representative of each coset (hence a shortest word) is kept.
    """
    elements = ball(generators, radius, identity=basepoint)
    items = sorted(elements.items(), key=lambda kv: (len(kv[1]), kv[1]))
    frame = OrbitFrame(engine, [], {})
    for el, word in items:
        i, found = frame.locate(el)
        if not found:
            frame.points.insert(i, el)
            frame.words[el] = word or "e"
    return frame


def induced_map(frame: OrbitFrame, g) -> dict[int, int]:
    """Partial self-map of frame indices: i -> j when g . points[i] lands on
    a frame coset; strictly monotone where defined."""
    out = {}
    for i, x in enumerate(frame.points):
        j = frame.index_of(g * x)
        if j is not None:
            out[i] = j
    return out


# ---------------------------------------------------------------------------
# Empirical classification
# ---------------------------------------------------------------------------

def _sample_indices(n: int, budget: int = 48) -> list[int]:
    if n <= budget:
        return list(range(n))
    step = (n - 1) / (budget - 1)
    return sorted({round(i * step) for i in range(budget)})


def _escape(frame: OrbitFrame, g, x, power_bound: int) -> str:
    """'up'/'down' when the orbit of x leaves the frame span, else 'bounded'
    (includes reaching a fixed coset).

    Escape is relative to the frame: an orbit that is bounded in the full
    order but overshoots the deepest ball elements still reads as escaping
    at this radius.
    """
    lo, hi = frame.points[0], frame.points[-1]
    y = x
    for _ in range(power_bound):
        z = g * y
        if frame.cmp_elements(z, y) == 0:
            return "bounded"
        y = z
        if frame.cmp_elements(y, hi) > 0:
            return "up"
        if frame.cmp_elements(y, lo) < 0:
            return "down"
    return "bounded"


def _runs(dirs: list[int]) -> list[int]:
    out = []
    for d in dirs:
        if not out or out[-1] != d:
            out.append(d)
    return out


def classify_empirical(frame: OrbitFrame, g, power_bound: int = 8) -> DynType:
    """Ordinal certificate for the dynamics of g on the realized order.

    Fixed extreme cosets bracket every orbit (TotallyBounded); a one-sided
    drift is TotallyBounded when interior quartile orbits stay inside the
    frame span for power_bound steps in both directions.  Otherwise the
    orbit of the top coset decides: escaping upward is expanding, escaping
    upward under the inverse is contracting.  A clean single sign change in
    the direction pattern with exactly one fixed coset upgrades a
    pseudohomothety to a homothety.  Anything else is Inconclusive.
    """
    n = len(frame.points)
    idx = _sample_indices(n)
    dirs = [frame.cmp_elements(g * frame.points[i], frame.points[i])
            for i in idx]
    if dirs[0] == 0 and dirs[-1] == 0:
        # the extremes are fixed cosets, so every orbit stays between them
        return DynType.TOTALLY_BOUNDED
    if len({d for d in dirs if d != 0}) == 1:
        # one-sided drift: bounded iff interior orbits stay inside the span
        ginv = g.inverse()
        interior = {frame.points[n // 4], frame.points[n // 2],
                    frame.points[(3 * n) // 4]}
        if all(_escape(frame, h, x, power_bound) == "bounded"
               for x in interior for h in (g, ginv)):
            return DynType.TOTALLY_BOUNDED
        return DynType.INCONCLUSIVE

    hi = frame.points[-1]
    ginv = g.inverse()
    fwd, bwd = _escape(frame, g, hi, power_bound), _escape(frame, ginv, hi, power_bound)
    if fwd == "up" and bwd != "up":
        expanding = True
    elif bwd == "up" and fwd != "up":
        expanding = False
    else:
        return DynType.INCONCLUSIVE

    clean = ([-1, 1], [-1, 0, 1]) if expanding else ([1, -1], [1, 0, -1])
    fixed = -1
    if _runs(dirs) in clean:
        # zoom into the sign transition and count fixed cosets exactly
        sgn = -1 if expanding else 1
        a = max(i for i, d in zip(idx, dirs) if d == sgn)
        b = min(i for i, d in zip(idx, dirs) if d == -sgn)
        fixed = sum(1 for i in range(a, b + 1)
                    if frame.cmp_elements(g * frame.points[i],
                                          frame.points[i]) == 0)
    if expanding:
        return (DynType.HOMOTHETY_EXPANDING if fixed == 1
                else DynType.EXPANDING_PSEUDOHOMOTHETY)
    return (DynType.HOMOTHETY_CONTRACTING if fixed == 1
            else DynType.CONTRACTING_PSEUDOHOMOTHETY)


# ---------------------------------------------------------------------------
# Predicted classification from exact germ and fixed-point data
# ---------------------------------------------------------------------------

def _flip(t: DynType) -> DynType:
    pairs = {DynType.HOMOTHETY_EXPANDING: DynType.HOMOTHETY_CONTRACTING,
             DynType.EXPANDING_PSEUDOHOMOTHETY: DynType.CONTRACTING_PSEUDOHOMOTHETY}
    pairs.update({v: k for k, v in pairs.items()})
    return pairs.get(t, t)


def classify_predicted(g: PLMap, horograding: str = "increasing") -> DynType:
    """Expected dynamical type of g in the horograded realization.

    The germ at the horograding end decides: trivial germ means
    TotallyBounded; a germ moving points toward the end is expanding, away
    is contracting (unit model at 1: slope < 1 expands; line model at
    +infinity: slope > 1, or slope 1 with positive offset, expands); a
    pseudohomothety upgrades to a homothety when g has no fixed points in
    the model (interior fixed points, for the unit model).
    """
    if horograding not in ("increasing", "decreasing"):
        raise ValueError("horograding must be 'increasing' or 'decreasing'")
    if g.is_identity():
        return DynType.TOTALLY_BOUNDED
    if g.model == "unit":
        s = g.slopes[-1]
        if s == 1:
            out = DynType.TOTALLY_BOUNDED
        else:
            expanding = s < 1
            interior = any(hi > 0 and lo < 1
                           for lo, hi in g.fixed_structure().fixed)
            if expanding:
                out = (DynType.EXPANDING_PSEUDOHOMOTHETY if interior
                       else DynType.HOMOTHETY_EXPANDING)
            else:
                out = (DynType.CONTRACTING_PSEUDOHOMOTHETY if interior
                       else DynType.HOMOTHETY_CONTRACTING)
    else:
        s, c = g.germ("+inf")
        if s == 1 and c == 0:
            out = DynType.TOTALLY_BOUNDED
        else:
            expanding = s > 1 or (s == 1 and c > 0)
            fixed_free = not g.fixed_structure().fixed
            if expanding:
                out = (DynType.HOMOTHETY_EXPANDING if fixed_free
                       else DynType.EXPANDING_PSEUDOHOMOTHETY)
            else:
                out = (DynType.HOMOTHETY_CONTRACTING if fixed_free
                       else DynType.CONTRACTING_PSEUDOHOMOTHETY)
    return _flip(out) if horograding == "decreasing" else out


# ---------------------------------------------------------------------------
# Cross-free covers and homothety evidence
# ---------------------------------------------------------------------------

def _crossing(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (a1, a2), (b1, b2) = sorted(a), sorted(b)
    if a2 < b1 or b2 < a1:
        return False
    if (b1 <= a1 and a2 <= b2) or (a1 <= b1 and b2 <= a2):
        return False
    return True


def cf_cover_check(frame: OrbitFrame, intervals) -> dict:
    """Pairwise non-crossing verdict and span coverage for index intervals."""
    intervals = [tuple(sorted(map(int, iv))) for iv in intervals]
    crossing = next(((i, j) for i in range(len(intervals))
                     for j in range(i + 1, len(intervals))
                     if _crossing(intervals[i], intervals[j])), None)
    covered: set[int] = set()
    for a, b in intervals:
        covered.update(range(a, b + 1))
    return {"crossFree": crossing is None,
            "witness": crossing,
            "covering": set(range(len(frame))) <= covered}


class NoFixedPoint(ValueError):
    pass


def homothety_witness(engine, g, test_points, fixed_point=None,
                      max_power: int = 16) -> bool:
    """Homothetic-type evidence: around a fixed coset of g, every other test
    point is eventually pushed past all the rest by some power of g (or of
    its inverse, for the contracting direction).

    When fixed_point is given it must be fixed by g (NoFixedPoint
    otherwise); when omitted, a fixed test point is searched for, and False
    is returned if there is none.
    """
    pts = list(test_points)

    def cmp(u, v) -> int:
        return engine.sign(v.inverse() * u).value

    if fixed_point is not None:
        if cmp(g * fixed_point, fixed_point) != 0:
            raise NoFixedPoint("g does not fix the designated point")
        center = fixed_point
    else:
        center = next((x for x in pts if cmp(g * x, x) == 0), None)
        if center is None:
            return False

    def escapes(h) -> bool:
        for x in pts:
            side = cmp(x, center)
            if side == 0:
                continue
            y = x
            for _ in range(max_power):
                y = h * y
                if all(cmp(y, p) == side for p in pts if p is not x):
                    break
            else:
                return False
        return True

    return escapes(g) or escapes(g.inverse())
