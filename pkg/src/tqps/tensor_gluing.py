"""Tensor powers of the Toeplitz model and the gluing machinery.

Elements of a tensor power are exact linear combinations of pure atom
tensors.  Each slot of a pure tensor holds one Toeplitz atom, a shift
("T", a) or a matrix unit ("E", j, k); at most one distinguished slot holds
a circle monomial ("u", m) instead.  Slot positions are 1-based throughout
the public surface.

The gauge grading gives every atom an integer degree (a for a shift,
j - k for a matrix unit, m for a circle monomial).  The diagonal circle
coaction appends a circle slot carrying the total degree, and the gluing
map psi acts on a tensor with a trailing circle slot by replacing the
circle exponent h with -(d + h) where d is the total degree of the other
slots.  That closed form makes psi an exact involution, which is the
unipotence property the verification suites exercise.

chi relocates the circle slot; psi_ij conjugates psi by relocations and is
the slot-accurate gluing between two chart indices.  The slotwise symbol
map turns a Toeplitz slot into a circle slot by killing matrix units, and
quotient classes modulo two slot kernels are canonicalized by dropping
every term with a matrix unit in a killed slot.  phi composes symbol,
gluing and section into the transition between two quotient charts; the
cocycle and kernel-image checks sample it.
"""

from functools import lru_cache

from .circle_hopf import ONE, ZERO, Scalar
from .toeplitz_core import ToeplitzElement
from .util import derived_rng
from . import sampling

DEFAULT_SEED = 0x5EED


def atom_degree(atom):
    """Gauge degree of one atom."""
    kind = atom[0]
    if kind == "T":
        return atom[1]
    if kind == "E":
        return atom[1] - atom[2]
    if kind == "u":
        return atom[1]
    raise ValueError("unknown atom kind %r" % (atom,))


def _validate_atom(atom, is_circle):
    kind = atom[0]
    if is_circle:
        if kind != "u" or len(atom) != 2:
            raise ValueError("circle slot must hold a ('u', m) atom, got %r" % (atom,))
        return
    if kind == "T":
        if len(atom) != 2:
            raise ValueError("bad shift atom %r" % (atom,))
    elif kind == "E":
        if len(atom) != 3 or atom[1] < 0 or atom[2] < 0:
            raise ValueError("bad matrix unit atom %r" % (atom,))
    else:
        raise ValueError("Toeplitz slot must hold ('T', a) or ('E', j, k), got %r" % (atom,))


def _atom_to_toeplitz(atom):
    if atom[0] == "T":
        return ToeplitzElement.shift(atom[1])
    return ToeplitzElement.matrix_unit(atom[1], atom[2])


@lru_cache(maxsize=None)
def _mul_toeplitz_atoms(a, b):
    """Product of two Toeplitz atoms as a tuple of (atom, Scalar) terms.

    Delegates to the correction-formula product so the tensor algebra and
    the single-slot algebra can never drift apart.
    """
    prod = _atom_to_toeplitz(a) * _atom_to_toeplitz(b)
    return tuple(prod.atoms())


class TensorElement:
    """Exact linear combination of pure atom tensors of a fixed shape.

    n_slots counts all slots, circle_slot is the 1-based position of the
    distinguished circle slot or None.  Zero coefficients are dropped, so
    equality of the term maps is equality of elements.
    """

    __slots__ = ("n_slots", "circle_slot", "terms")

    def __init__(self, n_slots, circle_slot=None, terms=None):
        if n_slots < 1:
            raise ValueError("need at least one slot")
        if circle_slot is not None and not 1 <= circle_slot <= n_slots:
            raise ValueError("circle slot %r out of range" % circle_slot)
        self.n_slots = n_slots
        self.circle_slot = circle_slot
        clean = {}
        if terms:
            for atoms, c in terms.items():
                atoms = tuple(atoms)
                if len(atoms) != n_slots:
                    raise ValueError("term %r does not match %d slots" % (atoms, n_slots))
                for pos, atom in enumerate(atoms, start=1):
                    _validate_atom(atom, pos == circle_slot)
                c = Scalar.coerce(c)
                if c:
                    clean[atoms] = clean.get(atoms, ZERO) + c
        self.terms = {a: c for a, c in clean.items() if c}

    @classmethod
    def zero(cls, n_slots, circle_slot=None):
        return cls(n_slots, circle_slot)

    @classmethod
    def one(cls, n_slots, circle_slot=None):
        atoms = tuple(
            ("u", 0) if (pos == circle_slot) else ("T", 0) for pos in range(1, n_slots + 1)
        )
        return cls(n_slots, circle_slot, {atoms: ONE})

    @classmethod
    def pure(cls, atoms, circle_slot=None, coeff=1):
        atoms = tuple(atoms)
        return cls(len(atoms), circle_slot, {atoms: Scalar.coerce(coeff)})

    def _same_shape(self, other):
        return self.n_slots == other.n_slots and self.circle_slot == other.circle_slot

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not self._same_shape(other):
            raise ValueError("shape mismatch in tensor sum")
        out = dict(self.terms)
        for atoms, c in other.terms.items():
            out[atoms] = out.get(atoms, ZERO) + c
        return TensorElement(self.n_slots, self.circle_slot, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElement(
            self.n_slots, self.circle_slot, {a: -c for a, c in self.terms.items()}
        )

    def scale(self, scalar):
        scalar = Scalar.coerce(scalar)
        return TensorElement(
            self.n_slots, self.circle_slot, {a: c * scalar for a, c in self.terms.items()}
        )

    def __mul__(self, other):
        """Slotwise product; Toeplitz slots expand through atom corrections."""
        if not self._same_shape(other):
            raise ValueError("shape mismatch in tensor product")
        out = {}
        circle_index = None if self.circle_slot is None else self.circle_slot - 1
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                alternatives = [((), c1 * c2)]
                for s in range(self.n_slots):
                    a, b = t1[s], t2[s]
                    if s == circle_index:
                        slot_terms = ((("u", a[1] + b[1]), ONE),)
                    else:
                        slot_terms = _mul_toeplitz_atoms(a, b)
                    alternatives = [
                        (prefix + (atom,), c * ac)
                        for prefix, c in alternatives
                        for atom, ac in slot_terms
                    ]
                for atoms, c in alternatives:
                    out[atoms] = out.get(atoms, ZERO) + c
        return TensorElement(self.n_slots, self.circle_slot, out)

    def term_degree(self, atoms):
        return sum(atom_degree(a) for a in atoms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.n_slots == other.n_slots
            and self.circle_slot == other.circle_slot
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        return "TensorElement(%d, circle=%r, %d terms)" % (
            self.n_slots,
            self.circle_slot,
            len(self.terms),
        )

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for atoms in sorted(self.terms):
            c = self.terms[atoms]
            cs = c.render()
            if c.re != 0 and c.im != 0:
                cs = "(%s)" % cs
            body = " & ".join(_render_atom(a) for a in atoms)
            parts.append(body if cs == "1" else "%s*(%s)" % (cs, body))
        return " + ".join(parts)

    def to_json(self):
        return {
            "n_slots": self.n_slots,
            "circle_slot": self.circle_slot,
            "terms": [
                {"atoms": [list(a) for a in atoms], "coeff": c.to_json()}
                for atoms, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data):
        terms = {}
        for row in data["terms"]:
            atoms = tuple(tuple(a) for a in row["atoms"])
            terms[atoms] = Scalar.from_json(row["coeff"])
        return cls(data["n_slots"], data["circle_slot"], terms)


def _render_atom(atom):
    if atom[0] == "T":
        if atom[1] == 0:
            return "1"
        return "z" if atom[1] == 1 else ("z*" if atom[1] == -1 else "T(u^%d)" % atom[1])
    if atom[0] == "E":
        return "E[%d,%d]" % (atom[1], atom[2])
    return "u^%d" % atom[1] if atom[1] != 1 else "u"


def embed_toeplitz(elements):
    """Pure tensor of ToeplitzElements as a TensorElement (distributing atoms)."""
    n = len(elements)
    out = TensorElement.zero(n)
    combos = [((), ONE)]
    for x in elements:
        expansion = list(x.atoms())
        combos = [
            (prefix + (atom,), c * ac) for prefix, c in combos for atom, ac in expansion
        ]
    terms = {}
    for atoms, c in combos:
        terms[atoms] = terms.get(atoms, ZERO) + c
    return TensorElement(n, None, terms)


def diagonal_coaction(x):
    """Append a circle slot carrying the total gauge degree of each term."""
    if x.circle_slot is not None:
        raise ValueError("diagonal coaction expects pure Toeplitz slots")
    terms = {}
    for atoms, c in x.terms.items():
        row = atoms + (("u", x.term_degree(atoms)),)
        terms[row] = c
    return TensorElement(x.n_slots + 1, x.n_slots + 1, terms)


def flip(x, inverse=False):
    """Move the circle slot from the front to the back (inverse: back to front)."""
    n = x.n_slots
    if not inverse:
        if x.circle_slot != 1:
            raise ValueError("flip expects the circle slot in front")
        terms = {atoms[1:] + (atoms[0],): c for atoms, c in x.terms.items()}
        return TensorElement(n, n, terms)
    if x.circle_slot != n:
        raise ValueError("inverse flip expects the circle slot at the back")
    terms = {(atoms[-1],) + atoms[:-1]: c for atoms, c in x.terms.items()}
    return TensorElement(n, 1, terms)


def chi(x, j):
    """Relocate the trailing circle slot to position j, keeping Toeplitz order."""
    n = x.n_slots
    if x.circle_slot != n:
        raise ValueError("chi expects the circle slot at the back")
    if not 1 <= j <= n:
        raise ValueError("target slot %r out of range" % j)
    terms = {}
    for atoms, c in x.terms.items():
        row = atoms[: j - 1] + (atoms[-1],) + atoms[j - 1 : -1]
        terms[row] = c
    return TensorElement(n, j, terms)


def chi_inv(x, j):
    """Relocate the circle slot from position j back to the end."""
    n = x.n_slots
    if x.circle_slot != j:
        raise ValueError("chi_inv expects the circle slot at position %r" % j)
    terms = {}
    for atoms, c in x.terms.items():
        row = atoms[: j - 1] + atoms[j:] + (atoms[j - 1],)
        terms[row] = c
    return TensorElement(n, n, terms)


def psi(x):
    """The gluing involution on tensors with a trailing circle slot.

    Replaces the circle exponent h of each term by -(d + h), d the total
    degree of the Toeplitz slots.  Applying it twice is the identity.
    """
    n = x.n_slots
    if x.circle_slot != n:
        raise ValueError("psi expects the circle slot at the back")
    terms = {}
    for atoms, c in x.terms.items():
        d = sum(atom_degree(a) for a in atoms[:-1])
        h = atoms[-1][1]
        row = atoms[:-1] + (("u", -(d + h)),)
        terms[row] = c
    return TensorElement(n, n, terms)


def psi_ij(x, i, j):
    """Gluing between chart indices i < j: circle slot moves from i+1 to j."""
    if not 0 <= i < j <= x.n_slots:
        raise ValueError("need 0 <= i < j <= slot count")
    return chi(psi(chi_inv(x, i + 1)), j)


def psi_ij_inv(x, i, j):
    """Inverse of psi_ij: circle slot moves from j back to i+1."""
    if not 0 <= i < j <= x.n_slots:
        raise ValueError("need 0 <= i < j <= slot count")
    return chi(psi(chi_inv(x, j)), i + 1)


def slot_symbol(x, k):
    """Slotwise symbol map: kill matrix units in slot k, shifts become circle monomials."""
    if x.circle_slot is not None:
        raise ValueError("slot_symbol expects pure Toeplitz slots")
    if not 1 <= k <= x.n_slots:
        raise ValueError("slot %r out of range" % k)
    terms = {}
    for atoms, c in x.terms.items():
        atom = atoms[k - 1]
        if atom[0] == "E":
            continue
        row = atoms[: k - 1] + (("u", atom[1]),) + atoms[k:]
        terms[row] = terms.get(row, ZERO) + c
    return TensorElement(x.n_slots, k, terms)


def lift_circle(x):
    """Linear section of the slotwise symbol: the circle slot becomes a shift slot."""
    k = x.circle_slot
    if k is None:
        raise ValueError("lift_circle expects a circle slot")
    terms = {}
    for atoms, c in x.terms.items():
        row = atoms[: k - 1] + (("T", atoms[k - 1][1]),) + atoms[k:]
        terms[row] = c
    return TensorElement(x.n_slots, None, terms)


def project_slots(x, slots):
    """Drop every term carrying a matrix unit in one of the given slots.

    This is the canonical representative of the class of x modulo the sum
    of the slot kernels: the kernel of the symbol at slot s is spanned by
    the terms with a matrix unit in slot s.
    """
    slots = set(slots)
    for s in slots:
        if not 1 <= s <= x.n_slots or s == x.circle_slot:
            raise ValueError("cannot project slot %r" % s)
    terms = {}
    for atoms, c in x.terms.items():
        if any(atoms[s - 1][0] == "E" for s in slots):
            continue
        terms[atoms] = c
    return TensorElement(x.n_slots, x.circle_slot, terms)


def slot_for(side, idx):
    """Slot in a tensor component at chart `side` that tracks chart index `idx`."""
    if side == idx:
        raise ValueError("a chart does not track its own index")
    return idx if idx > side else idx + 1


class QuotientClass:
    """Class of a pure Toeplitz tensor modulo two slot kernels.

    The representative is canonical: every term with a matrix unit in a
    killed slot is dropped, so class equality is representative equality.
    """

    __slots__ = ("rep", "killed")

    def __init__(self, rep, killed):
        a, b = killed
        if a == b:
            raise ValueError("killed slots must differ")
        self.rep = project_slots(rep, (a, b))
        self.killed = frozenset((a, b))

    def __eq__(self, other):
        if not isinstance(other, QuotientClass):
            return NotImplemented
        return self.killed == other.killed and self.rep == other.rep

    __hash__ = None

    def __repr__(self):
        return "QuotientClass(killed=%s, %r)" % (sorted(self.killed), self.rep)

    def to_json(self):
        return {"killed_slots": sorted(self.killed), "representative": self.rep.to_json()}


def quotient_class(x, kill_a, kill_b):
    return QuotientClass(x, (kill_a, kill_b))


def transition_representative(x, i, j):
    """Raw chart transition on representatives, without canonicalization.

    Reads x as a component at chart j, pushes it through symbol, gluing and
    section, and returns the candidate component at chart i.  Index order
    decides which direction of the gluing applies.
    """
    if i == j:
        raise ValueError("transition needs two distinct charts")
    if i < j:
        w = slot_symbol(x, i + 1)
        w = psi_ij(w, i, j)
    else:
        w = slot_symbol(x, i)
        w = psi_ij_inv(w, j, i)
    return lift_circle(w)


def phi(cls, i, j, k):
    """Transition between quotient charts: the class over chart j, with the
    kernels of i and k removed, maps to the matching class over chart i.
    """
    n = cls.rep.n_slots
    indices = {i, j, k}
    if len(indices) != 3 or any(not 0 <= t <= n for t in indices):
        raise ValueError("need three distinct chart indices within range")
    expected = frozenset((slot_for(j, i), slot_for(j, k)))
    if cls.killed != expected:
        raise ValueError(
            "class kills slots %s, transition %d<-%d needs %s"
            % (sorted(cls.killed), i, j, sorted(expected))
        )
    y = transition_representative(cls.rep, i, j)
    return QuotientClass(y, (slot_for(i, j), slot_for(i, k)))


def random_tensor_element(
    rng,
    n_slots,
    circle_slot=None,
    min_terms=1,
    max_terms=3,
    max_degree=3,
    max_index=3,
    compact_slots=(),
    compact_only=False,
):
    """Seeded random element: uniform degrees in [-max_degree, max_degree],
    matrix unit indices in [0, max_index]^2, 1..3 terms by default.
    compact_slots forces a matrix unit in those slots of every term.
    """
    compact_slots = set(compact_slots)
    terms = {}
    for _ in range(rng.randint(min_terms, max_terms)):
        atoms = []
        for pos in range(1, n_slots + 1):
            if pos == circle_slot:
                atoms.append(("u", rng.randint(-max_degree, max_degree)))
            elif compact_only or pos in compact_slots:
                atoms.append(("E", rng.randint(0, max_index), rng.randint(0, max_index)))
            else:
                if rng.random() < 0.5:
                    atoms.append(("T", rng.randint(-max_degree, max_degree)))
                else:
                    atoms.append(("E", rng.randint(0, max_index), rng.randint(0, max_index)))
        atoms = tuple(atoms)
        c = sampling.random_nonzero_scalar(rng)
        terms[atoms] = terms.get(atoms, ZERO) + c
    return TensorElement(n_slots, circle_slot, terms)


def _enumerate_atoms(max_degree, max_index, circle):
    if circle:
        return [("u", h) for h in range(-max_degree, max_degree + 1)]
    atoms = [("T", a) for a in range(-max_degree, max_degree + 1)]
    atoms += [
        ("E", j, k) for j in range(max_index + 1) for k in range(max_index + 1)
    ]
    return atoms


def psi_involution_check(n, samples=1000, seed=DEFAULT_SEED, max_degree=3, max_index=3):
    """Exhaustive atom sweep plus seeded random sweep of psi o psi = id.

    Works on tensors with n - 1 Toeplitz slots and a trailing circle slot,
    matching the gluing domain for the n-chart construction.
    """
    failures = []
    checked = 0

    def check(x):
        nonlocal checked
        checked += 1
        if psi(psi(x)) != x:
            failures.append(x.to_json())

    slots = n - 1

    def sweep(prefix):
        if len(prefix) == slots:
            for h in range(-max_degree, max_degree + 1):
                check(TensorElement.pure(tuple(prefix) + (("u", h),), circle_slot=n))
            return
        for atom in _enumerate_atoms(max_degree, max_index, circle=False):
            sweep(prefix + [atom])

    sweep([])
    rng = derived_rng(seed, "psi", n)
    for _ in range(samples):
        check(random_tensor_element(rng, n, circle_slot=n, max_degree=max_degree))
    return {
        "schema": 1,
        "check": "gluing-involution",
        "n": n,
        "atoms_and_samples": checked,
        "seed": seed,
        "failures": failures,
        "passed": not failures,
    }


def _case_label(i, j, k):
    a, b = min(i, j), max(i, j)
    if a < k < b:
        return "i<k<j"
    if k > b:
        return "i<j<k"
    return "k<i<j"


def _apply_chart_projection(x, source, target):
    """pi from the component at chart `source` toward chart `target`."""
    if source < target:
        return slot_symbol(x, target)
    return psi_ij(slot_symbol(x, target + 1), target, source)


def kernel_image_check(n, i, j, k, samples=50, seed=DEFAULT_SEED):
    """Sampled check that both chart projections push the k-kernel of their
    source onto the same target ideal.

    For each sampled kernel generator the image must keep its matrix unit in
    the slot the exchange identity predicts; the report lists any term that
    lands elsewhere.
    """
    if len({i, j, k}) != 3 or any(not 0 <= t <= n for t in (i, j, k)):
        raise ValueError("need three distinct chart indices within range")
    a, b = min(i, j), max(i, j)
    predicted_slot = slot_for(a, k)
    failures = []
    for source, target in ((i, j), (j, i)):
        kernel_slot = slot_for(source, k)
        rng = derived_rng(seed, "kernel-image", n, i, j, k, source)
        for idx in range(samples):
            x = random_tensor_element(rng, n, compact_slots={kernel_slot})
            image = _apply_chart_projection(x, source, target)
            if image.circle_slot != b:
                failures.append(
                    {"sample": idx, "source": source, "reason": "circle slot misplaced"}
                )
                continue
            for atoms in image.terms:
                if atoms[predicted_slot - 1][0] != "E":
                    failures.append(
                        {
                            "sample": idx,
                            "source": source,
                            "term": [list(atom) for atom in atoms],
                        }
                    )
    return {
        "schema": 1,
        "case": _case_label(i, j, k),
        "triple": [i, j, k],
        "n": n,
        "predicted_slot": predicted_slot,
        "samples": samples,
        "seed": seed,
        "failures": failures,
        "passed": not failures,
    }


def cocycle_check(n, samples=100, seed=DEFAULT_SEED, extra_triples=2):
    """Sampled check of the transition cocycle on quotient classes.

    For each ordered triple i < k < j the identity phi_ij = phi_ik o phi_kj
    (with matching killed kernels) must hold exactly; a couple of non-ordered
    triples are spot-checked through the inverse branch as well.  Every
    sample also re-runs the raw pipeline on a representative perturbed by a
    kernel term, which certifies that class output does not depend on the
    choice of representative.
    """
    triples = []
    idx = list(range(n + 1))
    for i in idx:
        for k in idx:
            for j in idx:
                if i < k < j:
                    triples.append((i, j, k))
    spot = []
    for i in idx:
        for j in idx:
            for k in idx:
                if len({i, j, k}) == 3 and not (i < k < j) and len(spot) < extra_triples:
                    spot.append((i, j, k))
    failures = []
    for i, j, k in triples + spot:
        rng = derived_rng(seed, "cocycle", n, i, j, k)
        for s in range(samples):
            x = random_tensor_element(rng, n)
            cls = quotient_class(x, slot_for(j, i), slot_for(j, k))
            lhs = phi(cls, i, j, k)
            rhs = phi(phi(cls, k, j, i), i, k, j)
            if lhs != rhs:
                failures.append(
                    {"triple": [i, j, k], "sample": s, "reason": "cocycle violated"}
                )
                continue
            kernel_slot = min(cls.killed)
            noise = random_tensor_element(rng, n, compact_slots={kernel_slot})
            raw = transition_representative(x + noise, i, j)
            perturbed = QuotientClass(raw, (slot_for(i, j), slot_for(i, k)))
            if perturbed != lhs:
                failures.append(
                    {
                        "triple": [i, j, k],
                        "sample": s,
                        "reason": "representative dependence",
                    }
                )
    return {
        "schema": 1,
        "check": "transition-cocycle",
        "n": n,
        "triples": [list(t) for t in triples + spot],
        "samples": samples,
        "seed": seed,
        "failures": failures,
        "passed": not failures,
    }
