"""Finite posets, distributive lattices, the upper-set transform, and the
free distributive lattice on a finite generating family.

Conventions.  The transform sends a lattice element to the set of meet
irreducibles above it; those sets are upper sets of the irreducible poset,
and lattice join lands on intersection while lattice meet lands on union.
The upper-set lattice constructor adopts the same pairing (join is
intersection) so the two directions invert each other on the nose.

The free distributive lattice on generators g_0..g_{n-1} is modelled by
antichains of nonempty index sets, read as joins of meets.  Joins keep the
minimal sets of the union; meets keep the minimal pairwise unions.  A
finitely generated distributive lattice is free on its generators exactly
when every join over a nonempty proper generator subset is meet
irreducible and the order between such joins is index-set inclusion;
check_freeness_criterion runs that test through caller-supplied join,
meet and equality callbacks so it applies to ideal lattices and covering
lattices alike.
"""

import itertools

# Antichain counts over all subsets of an n-point set, n = 0..8.  Used only
# as a safety cap on sublattice closures; the library recomputes the small
# ones independently in antichain_count.
_DEDEKIND = [2, 3, 6, 20, 168, 7581, 7828354, 2414682040998, 56130437228687557907788]


class LatticeError(ValueError):
    """A lattice axiom or the distributive law failed to hold."""


def _popcount(x):
    return bin(x).count("1")


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Poset:
    """Finite poset over hashable labels.

    The relation is stored as one up-set bitmask per element.  The
    constructor takes strict or reflexive pairs of labels; with close=True
    it forms the transitive closure, otherwise transitivity is required.
    Cycles are rejected either way.
    """

    __slots__ = ("labels", "_index", "up")

    def __init__(self, labels, pairs=(), close=False):
        self.labels = list(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise LatticeError("duplicate labels")
        n = len(self.labels)
        up = [1 << i for i in range(n)]
        for a, b in pairs:
            up[self._index[a]] |= 1 << self._index[b]
        if close:
            for k in range(n):
                bit = 1 << k
                for i in range(n):
                    if up[i] & bit:
                        up[i] |= up[k]
        self.up = up
        self._validate()

    def _validate(self):
        n = len(self.labels)
        for i in range(n):
            ui = self.up[i]
            for j in _bits(ui):
                if self.up[j] & ~ui:
                    raise LatticeError(
                        "relation not transitive at %r <= %r" % (self.labels[i], self.labels[j])
                    )
                if i != j and (self.up[j] >> i) & 1:
                    raise LatticeError(
                        "cycle through %r and %r" % (self.labels[i], self.labels[j])
                    )

    @classmethod
    def chain(cls, k):
        return cls(range(k), [(i, i + 1) for i in range(k - 1)], close=True)

    @classmethod
    def antichain(cls, k):
        return cls(range(k))

    @classmethod
    def subsets(cls, base_size, nonempty=True, proper=False):
        """Poset of subsets of a base_size-point set, ordered by inclusion."""
        members = []
        for r in range(0 if not nonempty else 1, base_size + 1):
            if proper and r == base_size:
                continue
            members.extend(frozenset(c) for c in itertools.combinations(range(base_size), r))
        pairs = [(a, b) for a in members for b in members if a < b]
        return cls(members, pairs, close=True)

    @property
    def n(self):
        return len(self.labels)

    def index(self, label):
        return self._index[label]

    def leq_idx(self, i, j):
        return bool((self.up[i] >> j) & 1)

    def leq(self, a, b):
        return self.leq_idx(self._index[a], self._index[b])

    def strict_pairs(self):
        """All pairs (a, b) of labels with a < b."""
        return [
            (self.labels[i], self.labels[j])
            for i in range(self.n)
            for j in _bits(self.up[i])
            if i != j
        ]

    def covers(self):
        """Index pairs (i, j) where j covers i."""
        down = [0] * self.n
        for a in range(self.n):
            for b in _bits(self.up[a]):
                down[b] |= 1 << a
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in _bits(strict):
                between = strict & down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def linear_extension(self):
        """Element indices, minimal elements first."""
        return sorted(range(self.n), key=lambda i: (-_popcount(self.up[i]), i))

    def _profiles(self):
        down = [0] * self.n
        for i in range(self.n):
            for j in _bits(self.up[i]):
                down[j] |= 1 << i
        base = [(_popcount(self.up[i]), _popcount(down[i])) for i in range(self.n)]
        refined = []
        for i in range(self.n):
            ups = tuple(sorted(base[j] for j in _bits(self.up[i] & ~(1 << i))))
            downs = tuple(sorted(base[j] for j in _bits(down[i] & ~(1 << i))))
            refined.append((base[i], ups, downs))
        return refined

    def isomorphic(self, other):
        """Backtracking isomorphism test with profile pruning."""
        if self.n != other.n:
            return False
        pa, pb = self._profiles(), other._profiles()
        if sorted(pa) != sorted(pb):
            return False
        candidates = [[j for j in range(other.n) if pb[j] == pa[i]] for i in range(self.n)]
        order = sorted(range(self.n), key=lambda i: len(candidates[i]))
        assigned = {}
        used = set()

        def extend(pos):
            if pos == len(order):
                return True
            i = order[pos]
            for j in candidates[i]:
                if j in used:
                    continue
                ok = True
                for i2, j2 in assigned.items():
                    if self.leq_idx(i, i2) != other.leq_idx(j, j2) or self.leq_idx(
                        i2, i
                    ) != other.leq_idx(j2, j):
                        ok = False
                        break
                if ok:
                    assigned[i] = j
                    used.add(j)
                    if extend(pos + 1):
                        return True
                    del assigned[i]
                    used.discard(j)
            return False

        return extend(0)

    def to_dot(self, name="poset", label_fn=str):
        lines = ["digraph %s {" % name, "  rankdir=BT;", "  node [shape=box];"]
        for i, lab in enumerate(self.labels):
            lines.append('  n%d [label="%s"];' % (i, _dot_escape(label_fn(lab))))
        for i, j in sorted(self.covers()):
            lines.append("  n%d -> n%d;" % (i, j))
        lines.append("}")
        return "\n".join(lines)

    def to_json(self):
        return {
            "labels": [_label_json(lab) for lab in self.labels],
            "strict_pairs": sorted(
                [self.labels.index(a), self.labels.index(b)] for a, b in self.strict_pairs()
            ),
        }


def _dot_escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _label_json(lab):
    if isinstance(lab, frozenset):
        return sorted(_label_json(x) for x in lab)
    if isinstance(lab, (set, tuple, list)):
        return [_label_json(x) for x in lab]
    return lab


def upper_set_masks(poset, limit=1 << 14):
    """All upper sets of the poset as bitmasks, sorted by (size, mask).

    Elements are decided maximal-first; a point may join only when its
    strict up-set is already in, so every search node is a valid partial
    choice and the run time is linear in the output.
    """
    order = poset.linear_extension()[::-1]
    out = []

    def rec(pos, mask):
        if len(out) > limit:
            raise ValueError("more than %d upper sets" % limit)
        if pos == len(order):
            out.append(mask)
            return
        i = order[pos]
        rec(pos + 1, mask)
        strict = poset.up[i] & ~(1 << i)
        if strict & ~mask == 0:
            rec(pos + 1, mask | (1 << i))

    rec(0, 0)
    out.sort(key=lambda m: (_popcount(m), m))
    return out


def upper_sets(poset):
    """All upper sets as frozensets of labels."""
    return [
        frozenset(poset.labels[i] for i in _bits(mask)) for mask in upper_set_masks(poset)
    ]


class FiniteDistributiveLattice:
    """Finite lattice with explicit join and meet tables.

    Elements are arbitrary distinct values; tables hold element indices.
    validate() checks the lattice axioms and the distributive law,
    exhaustively for small sizes and on a deterministic sample beyond.
    """

    __slots__ = ("elements", "join_table", "meet_table")

    def __init__(self, elements, join_table, meet_table):
        self.elements = list(elements)
        self.join_table = join_table
        self.meet_table = meet_table

    @classmethod
    def from_upper_sets(cls, poset):
        """Lattice of all upper sets, join = intersection, meet = union."""
        masks = upper_set_masks(poset)
        if len(masks) > 4096:
            raise ValueError("upper set lattice too large for tables")
        pos = {m: i for i, m in enumerate(masks)}
        join = [[pos[a & b] for b in masks] for a in masks]
        meet = [[pos[a | b] for b in masks] for a in masks]
        elements = [frozenset(poset.labels[i] for i in _bits(m)) for m in masks]
        return cls(elements, join, meet)

    @classmethod
    def from_elements(cls, elements, join_fn, meet_fn):
        """Tables from callables; elements must be hashable and closed."""
        elements = list(elements)
        if len(elements) > 1200:
            raise ValueError("too many elements for explicit tables")
        pos = {}
        for i, e in enumerate(elements):
            if e in pos:
                raise ValueError("duplicate element %r" % (e,))
            pos[e] = i
        join = [[0] * len(elements) for _ in elements]
        meet = [[0] * len(elements) for _ in elements]
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                try:
                    join[i][j] = pos[join_fn(a, b)]
                    meet[i][j] = pos[meet_fn(a, b)]
                except KeyError:
                    raise ValueError("join or meet escapes the element list")
        return cls(elements, join, meet)

    @property
    def n(self):
        return len(self.elements)

    def leq(self, i, j):
        return self.join_table[i][j] == j

    def top(self):
        for i in range(self.n):
            if all(self.leq(j, i) for j in range(self.n)):
                return i
        raise LatticeError("no top element")

    def bottom(self):
        for i in range(self.n):
            if all(self.leq(i, j) for j in range(self.n)):
                return i
        raise LatticeError("no bottom element")

    def validate(self):
        n = self.n
        jt, mt = self.join_table, self.meet_table
        for i in range(n):
            if jt[i][i] != i or mt[i][i] != i:
                raise LatticeError("idempotence fails at %d" % i)
            for j in range(n):
                if jt[i][j] != jt[j][i] or mt[i][j] != mt[j][i]:
                    raise LatticeError("commutativity fails at (%d, %d)" % (i, j))
                if mt[i][jt[i][j]] != i or jt[i][mt[i][j]] != i:
                    raise LatticeError("absorption fails at (%d, %d)" % (i, j))
        triples = itertools.product(range(n), repeat=3)
        if n > 40:
            import random as _random

            rng = _random.Random("lattice-validate/%d" % n)
            triples = (
                tuple(rng.randrange(n) for _ in range(3)) for _ in range(5000)
            )
        for i, j, k in triples:
            if jt[jt[i][j]][k] != jt[i][jt[j][k]]:
                raise LatticeError("join associativity fails at (%d, %d, %d)" % (i, j, k))
            if mt[mt[i][j]][k] != mt[i][mt[j][k]]:
                raise LatticeError("meet associativity fails at (%d, %d, %d)" % (i, j, k))
            if mt[i][jt[j][k]] != jt[mt[i][j]][mt[i][k]]:
                raise LatticeError("distributivity fails at (%d, %d, %d)" % (i, j, k))

    def order_poset(self):
        pairs = [
            (i, j) for i in range(self.n) for j in range(self.n) if i != j and self.leq(i, j)
        ]
        return Poset(range(self.n), pairs)

    def to_dot(self, name="lattice", label_fn=None):
        if label_fn is None:
            label_fn = lambda i: _render_element(self.elements[i])
        return self.order_poset().to_dot(name=name, label_fn=label_fn)

    def to_json(self):
        return {
            "schema": 1,
            "size": self.n,
            "elements": [_render_element(e) for e in self.elements],
            "join": self.join_table,
            "meet": self.meet_table,
        }


def _render_element(e):
    if isinstance(e, AntichainForm):
        return e.render()
    if isinstance(e, frozenset):
        return "{" + ", ".join(sorted(str(x) for x in e)) + "}"
    return str(e)


def meet_irreducibles(lat):
    """Indices of elements with no nontrivial meet decomposition, top excluded."""
    reducible = set()
    mt = lat.meet_table
    for a in range(lat.n):
        for b in range(a + 1, lat.n):
            m = mt[a][b]
            if m != a and m != b:
                reducible.add(m)
    top = lat.top()
    return [c for c in range(lat.n) if c != top and c not in reducible]


def join_irreducibles(lat):
    dual = FiniteDistributiveLattice(lat.elements, lat.meet_table, lat.join_table)
    return meet_irreducibles(dual)


class BirkhoffResult:
    __slots__ = ("poset", "irreducibles", "mapping")

    def __init__(self, poset, irreducibles, mapping):
        self.poset = poset
        self.irreducibles = irreducibles
        self.mapping = mapping


def birkhoff_transform(lat):
    """Map each element to the set of meet irreducibles above it.

    Returns the poset of meet irreducibles (labelled by their positions in
    the irreducible list) together with the image sets, after verifying
    that the map is injective, turns joins into intersections and meets
    into unions, and lands exactly on the upper sets of that poset.  Any
    failure means the lattice is not distributive.
    """
    mirr = meet_irreducibles(lat)
    k = len(mirr)
    pairs = [
        (x, y)
        for x in range(k)
        for y in range(k)
        if x != y and lat.leq(mirr[x], mirr[y])
    ]
    poset = Poset(range(k), pairs)
    mapping = []
    for a in range(lat.n):
        mapping.append(frozenset(x for x in range(k) if lat.leq(a, mirr[x])))
    if len(set(mapping)) != lat.n:
        raise LatticeError("transform not injective; lattice is not distributive")
    for a in range(lat.n):
        for b in range(lat.n):
            if mapping[lat.join_table[a][b]] != mapping[a] & mapping[b]:
                raise LatticeError("join does not map to intersection at (%d, %d)" % (a, b))
            if mapping[lat.meet_table[a][b]] != mapping[a] | mapping[b]:
                raise LatticeError("meet does not map to union at (%d, %d)" % (a, b))
    if k <= 20:
        image = {frozenset(_bits(m)) for m in upper_set_masks(poset)}
        if set(mapping) != image:
            raise LatticeError("image is not the full upper set family")
    return BirkhoffResult(poset, mirr, mapping)


class AntichainForm:
    """Join of meets over indexed generators, in minimal antichain form.

    The antichain is a set of nonempty, pairwise incomparable index sets;
    the element it denotes is the join over the family of the meets over
    each set.  Two forms are equal exactly when they denote the same
    element of the free distributive lattice.
    """

    __slots__ = ("n_generators", "antichain")

    def __init__(self, n_generators, family):
        family = frozenset(frozenset(s) for s in family)
        if not family:
            raise LatticeError("empty families are not elements here")
        for s in family:
            if not s:
                raise LatticeError("index sets must be nonempty")
            if not all(0 <= i < n_generators for i in s):
                raise LatticeError("index out of range in %r" % (s,))
        for s in family:
            for t in family:
                if s != t and s <= t:
                    raise LatticeError("family is not an antichain: %r <= %r" % (s, t))
        self.n_generators = n_generators
        self.antichain = family

    @classmethod
    def generator(cls, i, n_generators):
        return cls(n_generators, [frozenset([i])])

    @classmethod
    def pure_join(cls, indices, n_generators):
        return cls(n_generators, [frozenset([i]) for i in indices])

    def __eq__(self, other):
        if not isinstance(other, AntichainForm):
            return NotImplemented
        return self.n_generators == other.n_generators and self.antichain == other.antichain

    def __hash__(self):
        return hash((self.n_generators, self.antichain))

    def render(self):
        parts = sorted(tuple(sorted(s)) for s in self.antichain)
        return " v ".join("^".join("g%d" % i for i in s) for s in parts)

    def __repr__(self):
        return "AntichainForm(%d, %s)" % (self.n_generators, self.render())

    def to_json(self):
        return sorted(sorted(s) for s in self.antichain)


def _minimal(family):
    return frozenset(s for s in family if not any(t < s for t in family))


def fdl_join(x, y):
    if x.n_generators != y.n_generators:
        raise ValueError("mixed generator counts")
    return AntichainForm(x.n_generators, _minimal(x.antichain | y.antichain))


def fdl_meet(x, y):
    if x.n_generators != y.n_generators:
        raise ValueError("mixed generator counts")
    family = {a | b for a in x.antichain for b in y.antichain}
    return AntichainForm(x.n_generators, _minimal(family))


def fdl_leq(x, y):
    return fdl_join(x, y) == y


def _antichain_nodes(masks):
    """Yield every antichain (as a list of masks) of the given subset masks."""
    n = len(masks)
    incomparable = []
    for i in range(n):
        row = []
        for j in range(i + 1, n):
            a, b = masks[i], masks[j]
            if a & b != a and a & b != b:
                row.append(j)
        incomparable.append(row)

    def rec(chosen, candidates):
        yield chosen
        for pos, i in enumerate(candidates):
            allowed = set(incomparable[i])
            new_candidates = [j for j in candidates[pos + 1 :] if j in allowed]
            yield from rec(chosen + [i], new_candidates)

    yield from rec([], list(range(n)))


def antichain_count(n):
    """Number of antichains of subsets of an n-point set, empty ones included."""
    masks = list(range(1 << n))
    return sum(1 for _ in _antichain_nodes(masks))


def fdl_enumerate(n):
    """All elements of the free distributive lattice on n generators.

    Antichains of nonempty subsets, excluding the empty family; the list is
    sorted canonically and has antichain_count(n) - 2 entries.
    """
    masks = sorted(range(1, 1 << n), key=lambda m: (_popcount(m), m))
    out = []
    for node in _antichain_nodes(masks):
        if not node:
            continue
        out.append(AntichainForm(n, [frozenset(_bits(masks[i])) for i in node]))
    out.sort(key=lambda f: sorted(tuple(sorted(s)) for s in f.antichain))
    return out


class FreenessReport:
    """Outcome of the generator-freeness test.

    verdict is FREE, NOT_FREE (with a witness identifying the violated
    clause) or INCONSISTENT (the callbacks broke a lattice law, so the
    freeness question was never reached).
    """

    __slots__ = ("verdict", "witness", "details")

    def __init__(self, verdict, witness=None, details=None):
        self.verdict = verdict
        self.witness = witness
        self.details = details or {}

    @property
    def free(self):
        return self.verdict == "FREE"

    def to_json(self):
        return {"verdict": self.verdict, "witness": self.witness, "details": self.details}

    def __repr__(self):
        return "FreenessReport(%s)" % self.verdict


def _subset_key(indices):
    return tuple(sorted(indices))


def check_freeness_criterion(generators, join, meet, eq, irreducibility=None, max_size=None):
    """Decide whether the generators generate freely, via callbacks.

    The test has two halves.  First, joins over nonempty proper index sets
    must be ordered exactly by inclusion of the index sets.  Second, each
    such join must be meet irreducible in the generated sublattice; with an
    `irreducibility` callback the caller supplies that evidence (signature
    irreducibility(index_set) -> (ok, info)), otherwise the sublattice is
    closed off explicitly and irreducibility is read from its meet table.
    A distributivity spot check guards the closure; a broken law yields
    INCONSISTENT rather than a freeness verdict.
    """
    gens = list(generators)
    n = len(gens)
    if n < 1:
        raise ValueError("need at least one generator")

    def leq(a, b):
        return eq(join(a, b), b)

    index_sets = []
    for r in range(1, n):
        index_sets.extend(frozenset(c) for c in itertools.combinations(range(n), r))

    pure = {}
    for I in index_sets:
        it = iter(sorted(I))
        e = gens[next(it)]
        for i in it:
            e = join(e, gens[i])
        pure[I] = e

    for x in gens:
        for y in gens:
            for z in gens:
                lhs = meet(x, join(y, z))
                rhs = join(meet(x, y), meet(x, z))
                if not eq(lhs, rhs):
                    return FreenessReport(
                        "INCONSISTENT",
                        witness={"law": "distributivity", "note": "generator triple"},
                    )

    for I in index_sets:
        for J in index_sets:
            expected = I <= J
            observed = leq(pure[I], pure[J])
            if expected != observed:
                return FreenessReport(
                    "NOT_FREE",
                    witness={
                        "clause": "order",
                        "I": sorted(I),
                        "J": sorted(J),
                        "expected_leq": expected,
                        "observed_leq": observed,
                    },
                    details={"pure_joins": len(index_sets)},
                )

    if irreducibility is not None:
        evidence = []
        for I in index_sets:
            ok, info = irreducibility(I)
            evidence.append({"I": sorted(I), "ok": bool(ok), "info": info})
            if not ok:
                return FreenessReport(
                    "NOT_FREE",
                    witness={"clause": "irreducibility", "I": sorted(I), "info": info},
                    details={"irreducibility": evidence},
                )
        return FreenessReport(
            "FREE",
            details={"pure_joins": len(index_sets), "irreducibility": evidence},
        )

    cap = max_size
    if cap is None:
        cap = (_DEDEKIND[n] if n < len(_DEDEKIND) else antichain_count(n)) - 2

    elements = []
    buckets = {}

    # Hashable elements are pre-bucketed by hash, with eq deciding inside a
    # bucket.  Callers whose eq is coarser than hashing must provide the
    # irreducibility callback instead of relying on this closure.
    def locate(e):
        try:
            h = hash(e)
        except TypeError:
            for k, known in enumerate(elements):
                if eq(known, e):
                    return k
            return None
        for k in buckets.get(h, ()):
            if eq(elements[k], e):
                return k
        return None

    def add(e):
        k = locate(e)
        if k is None:
            elements.append(e)
            try:
                buckets.setdefault(hash(e), []).append(len(elements) - 1)
            except TypeError:
                pass
            if len(elements) > cap:
                raise LatticeError(
                    "sublattice closure exceeds the free size %d" % cap
                )
            return len(elements) - 1
        return k

    try:
        for g in gens:
            add(g)
        frontier = list(range(len(elements)))
        while frontier:
            snapshot = len(elements)
            for i in frontier:
                for j in range(snapshot):
                    add(join(elements[i], elements[j]))
                    add(meet(elements[i], elements[j]))
            frontier = list(range(snapshot, len(elements)))
    except LatticeError:
        return FreenessReport(
            "INCONSISTENT",
            witness={"law": "closure", "note": "sublattice exceeds the free size %d" % cap},
        )

    size = len(elements)
    pure_pos = {I: locate(pure[I]) for I in index_sets}

    reducible = set()
    for a in range(size):
        for b in range(a + 1, size):
            m = locate(meet(elements[a], elements[b]))
            if m is not None and m != a and m != b:
                reducible.add(m)

    for I in index_sets:
        c = pure_pos[I]
        if c in reducible:
            return FreenessReport(
                "NOT_FREE",
                witness={"clause": "irreducibility", "I": sorted(I)},
                details={"sublattice_size": size},
            )
        if not any(not leq(g, elements[c]) for g in gens):
            return FreenessReport(
                "NOT_FREE",
                witness={"clause": "irreducibility", "I": sorted(I), "note": "top"},
                details={"sublattice_size": size},
            )

    return FreenessReport(
        "FREE",
        details={"pure_joins": len(index_sets), "sublattice_size": size, "cap": cap},
    )
