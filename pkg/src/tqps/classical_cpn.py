"""Covering lattice and chart transitions of classical projective space.

Points are homogeneous coordinate tuples.  The basic covering sets are
V_a = {x : |x_i| is maximal for every i in a}, one per nonempty index set
a; the chartwise sets V_{i} generate the lattice under union and
intersection.  A covering set is stored canonically as the family of all
index sets a whose test point (coordinate 1 on a, 1/2 off a) it contains,
which is the upper closure of any defining family; the canonical family
is computed numerically through those membership tests.

lattice_R reads an antichain form as a join of meets of chartwise sets
and produces the covering set; lattice_L returns the minimal members,
recovering the form exactly.

Chart overlaps carry closed-disc coordinates with one unit-modulus slot;
slot s of the chart at index i tracks the homogeneous index shared with
the quantum components (slot_for).  The transition to the chart at the
circle's index divides through by the circle coordinate and is checked
against the composite of the chart maps.  This is the only module that
works in floating point: membership resolves at 1e-12, transition
agreement at 1e-10.
"""

import cmath
import itertools

from .order_lattice import AntichainForm, check_freeness_criterion
from .tensor_gluing import slot_for
from .util import derived_rng

MEMBERSHIP_TOL = 1e-12
TRANSITION_TOL = 1e-10
DEFAULT_SEED = 0x5EED


def probe_point(a, n):
    """Homogeneous test point of the index set a: 1 on a, 1/2 elsewhere."""
    return tuple(1.0 if i in a else 0.5 for i in range(n + 1))


def max_index_set(x, tol=MEMBERSHIP_TOL):
    """Indices where |x_i| attains the maximum, up to tol."""
    mags = [abs(c) for c in x]
    m = max(mags)
    return frozenset(i for i, v in enumerate(mags) if v >= m - tol)


def _point_in_family(x, family, tol=MEMBERSHIP_TOL):
    big = max_index_set(x, tol)
    return any(a <= big for a in family)


class CoveringSet:
    """Finite union of basic covering sets, canonicalized by test points."""

    __slots__ = ("n", "members")

    def __init__(self, n, members):
        members = frozenset(frozenset(a) for a in members)
        for a in members:
            if not a or not all(0 <= i <= n for i in a):
                raise ValueError("bad index set %r" % (a,))
        self.n = n
        self.members = members

    @classmethod
    def from_family(cls, n, family):
        family = [frozenset(a) for a in family]
        for a in family:
            if not a or not all(0 <= i <= n for i in a):
                raise ValueError("bad index set %r" % (a,))
        members = []
        for r in range(1, n + 2):
            for a in itertools.combinations(range(n + 1), r):
                if _point_in_family(probe_point(a, n), family):
                    members.append(frozenset(a))
        return cls(n, members)

    @classmethod
    def basic(cls, n, i):
        return cls.from_family(n, [frozenset([i])])

    @classmethod
    def empty(cls, n):
        return cls(n, [])

    def contains_point(self, x, tol=MEMBERSHIP_TOL):
        if len(x) != self.n + 1:
            raise ValueError("point has wrong length")
        return _point_in_family(x, self.members, tol)

    def union(self, other):
        self._check(other)
        return CoveringSet(self.n, self.members | other.members)

    def intersect(self, other):
        self._check(other)
        return CoveringSet(self.n, self.members & other.members)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("mixed projective dimensions")

    def __eq__(self, other):
        if not isinstance(other, CoveringSet):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self):
        return "CoveringSet(n=%d, %s)" % (self.n, self.render())

    def render(self):
        parts = sorted((tuple(sorted(a)) for a in self.members), key=lambda a: (len(a), a))
        return "{" + ", ".join("V" + "".join(str(i) for i in a) for a in parts) + "}"

    def to_json(self):
        return sorted(sorted(a) for a in self.members)


def lattice_R(form):
    """Covering set denoted by an antichain form over the chartwise sets."""
    return CoveringSet.from_family(form.n_generators - 1, form.antichain)


def lattice_L(cov):
    """Antichain form of a covering set: its minimal members."""
    minimal = [a for a in cov.members if not any(b < a for b in cov.members)]
    return AntichainForm(cov.n + 1, minimal)


class ChartPoint:
    """Point of a chart in closed-disc coordinates with one circle slot."""

    __slots__ = ("coords", "circle_slot")

    def __init__(self, coords, circle_slot, tol=TRANSITION_TOL):
        coords = tuple(complex(c) for c in coords)
        if not 1 <= circle_slot <= len(coords):
            raise ValueError("circle slot out of range")
        for s, c in enumerate(coords, start=1):
            if s == circle_slot:
                if abs(abs(c) - 1.0) > tol:
                    raise ValueError("circle coordinate has modulus %r" % abs(c))
            elif abs(c) > 1.0 + tol:
                raise ValueError("disc coordinate has modulus %r" % abs(c))
        self.coords = coords
        self.circle_slot = circle_slot

    @property
    def n(self):
        return len(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ChartPoint):
            return NotImplemented
        return self.circle_slot == other.circle_slot and self.coords == other.coords

    __hash__ = None

    def distance(self, other):
        if self.circle_slot != other.circle_slot or self.n != other.n:
            return float("inf")
        return max(abs(a - b) for a, b in zip(self.coords, other.coords))

    def __repr__(self):
        return "ChartPoint(circle=%d, %r)" % (self.circle_slot, self.coords)


def chart(i, x):
    """Affine coordinates of the chart at index i: divide through by x_i."""
    if abs(x[i]) == 0:
        raise ValueError("point misses the chart")
    return tuple(c / x[i] for pos, c in enumerate(x) if pos != i)


def chart_inv(i, coords):
    """Homogeneous representative with 1 in position i."""
    coords = tuple(coords)
    return coords[:i] + (1.0 + 0.0j,) + coords[i:]


def chart_overlap_point(x, i, j):
    """ChartPoint of x in the chart at i, circle slot tracking index j."""
    if i == j:
        raise ValueError("need two distinct chart indices")
    return ChartPoint(chart(i, x), slot_for(i, j))


def transition(p, i, j):
    """Chart change from index i to index j for i < j, dividing by the circle.

    The input tracks j in its circle slot; the output tracks i.  Disc
    coordinates pass through scaled by the inverse circle value, slots
    between i and j shift by one to make room for the new circle slot.
    """
    if not 0 <= i < j <= p.n:
        raise ValueError("need chart indices 0 <= i < j <= n")
    if p.circle_slot != slot_for(i, j):
        raise ValueError("input circle slot tracks the wrong index")
    d = (None,) + p.coords
    s = d[j]
    inv = 1.0 / s
    out = []
    for t in range(1, p.n + 1):
        if t <= i:
            out.append(inv * d[t])
        elif t == i + 1:
            out.append(inv)
        elif t <= j:
            out.append(inv * d[t - 1])
        else:
            out.append(inv * d[t])
    return ChartPoint(out, slot_for(j, i))


def transition_inverse(p, i, j):
    """Inverse chart change: back from the chart at j to the chart at i."""
    if not 0 <= i < j <= p.n:
        raise ValueError("need chart indices 0 <= i < j <= n")
    if p.circle_slot != slot_for(j, i):
        raise ValueError("input circle slot tracks the wrong index")
    w = (None,) + p.coords
    s = 1.0 / w[i + 1]
    out = []
    for t in range(1, p.n + 1):
        if t <= i:
            out.append(s * w[t])
        elif t < j:
            out.append(s * w[t + 1])
        elif t == j:
            out.append(s)
        else:
            out.append(s * w[t])
    return ChartPoint(out, slot_for(i, j))


def random_overlap_point(rng, n, i, j):
    """Homogeneous point with unit modulus at i and j, smaller elsewhere."""
    x = []
    for t in range(n + 1):
        if t in (i, j):
            x.append(cmath.exp(1j * rng.uniform(0, 2 * cmath.pi)))
        else:
            x.append(rng.uniform(0, 0.9) * cmath.exp(1j * rng.uniform(0, 2 * cmath.pi)))
    return tuple(x)


def transition_agreement(n, trials=1000, seed=DEFAULT_SEED):
    """Compare the transition formula with the chart-map composite.

    Random overlap points go through both paths for every pair i < j; the
    report records the worst coordinate deviation, the inverse roundtrip
    error, and any trial beyond tolerance.
    """
    failures = []
    worst = 0.0
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            rng = derived_rng(seed, "overlap", n, i, j)
            for t in range(trials):
                x = random_overlap_point(rng, n, i, j)
                p = chart_overlap_point(x, i, j)
                via_formula = transition(p, i, j)
                via_charts = chart_overlap_point(chart_inv(i, p.coords), j, i)
                err = via_formula.distance(via_charts)
                back = transition_inverse(via_formula, i, j)
                err = max(err, back.distance(p))
                worst = max(worst, err)
                if err > TRANSITION_TOL:
                    failures.append({"pair": [i, j], "trial": t, "error": err})
    return {
        "schema": 1,
        "check": "chart-transition-agreement",
        "n": n,
        "trials": trials,
        "seed": seed,
        "max_error": worst,
        "tolerance": TRANSITION_TOL,
        "failures": failures,
        "passed": not failures,
    }


def covering_generators(n):
    return [CoveringSet.basic(n, i) for i in range(n + 1)]


def classical_freeness(n):
    """Freeness of the chartwise covering sets under union and intersection."""
    gens = covering_generators(n)
    return check_freeness_criterion(
        gens,
        lambda a, b: a.union(b),
        lambda a, b: a.intersect(b),
        lambda a, b: a == b,
    )


def covering_lattice(n):
    """All covering sets generated by the charts, as canonical families."""
    from .order_lattice import fdl_enumerate

    return [lattice_R(form) for form in fdl_enumerate(n + 1)]
