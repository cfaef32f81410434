"""Checks for the commutative model: charts, transitions, covering sets."""

import cmath

import pytest

from tqps.classical_cpn import (
    DEFAULT_SEED,
    TRANSITION_TOL,
    ChartPoint,
    CoveringSet,
    chart,
    chart_inv,
    chart_overlap_point,
    classical_freeness,
    covering_generators,
    covering_lattice,
    lattice_L,
    lattice_R,
    max_index_set,
    random_overlap_point,
    probe_point,
    transition,
    transition_agreement,
    transition_inverse,
)
from tqps.order_lattice import AntichainForm, fdl_enumerate, fdl_join, fdl_meet
from tqps.sampling import random_antichain_form
from tqps.tensor_gluing import slot_for
from tqps.util import derived_rng


def rng_for(name):
    return derived_rng(DEFAULT_SEED, "test-classical", name)


def test_probe_points_discriminate():
    x = probe_point({0, 2}, 2)
    assert x == (1.0, 0.5, 1.0)
    assert max_index_set(x) == frozenset({0, 2})
    assert max_index_set((0.5, 0.5, 0.5)) == frozenset({0, 1, 2})


def test_covering_set_canonicalization():
    # a single-index family closes up to everything containing the index
    v0 = CoveringSet.basic(2, 0)
    assert v0.members == {
        frozenset({0}),
        frozenset({0, 1}),
        frozenset({0, 2}),
        frozenset({0, 1, 2}),
    }
    # redundant members do not change the canonical form
    again = CoveringSet.from_family(2, [{0}, {0, 1}])
    assert again == v0
    assert v0.render() == "{V0, V01, V02, V012}"


def test_covering_set_validation():
    with pytest.raises(ValueError):
        CoveringSet(2, [frozenset()])
    with pytest.raises(ValueError):
        CoveringSet.from_family(2, [{5}])
    with pytest.raises(ValueError):
        CoveringSet.basic(2, 0).union(CoveringSet.basic(3, 0))


def test_covering_set_operations_match_point_membership():
    rng = rng_for("points")
    n = 2
    sets = [CoveringSet.basic(n, i) for i in range(n + 1)]
    a = sets[0].union(sets[1])
    b = sets[1].intersect(sets[2])
    for _ in range(200):
        x = tuple(
            rng.uniform(0.1, 1.0) * cmath.exp(1j * rng.uniform(0, 2 * cmath.pi))
            for _ in range(n + 1)
        )
        ina = a.contains_point(x)
        inb = b.contains_point(x)
        assert ina == (sets[0].contains_point(x) or sets[1].contains_point(x))
        assert inb == (sets[1].contains_point(x) and sets[2].contains_point(x))


def test_lattice_maps_are_mutually_inverse_exhaustively():
    for n in (1, 2):
        for form in fdl_enumerate(n + 1):
            cov = lattice_R(form)
            assert lattice_L(cov) == form
            assert lattice_R(lattice_L(cov)) == cov


def test_lattice_maps_are_mutually_inverse_on_samples():
    rng = rng_for("roundtrip")
    n = 3
    done = 0
    while done < 200:
        try:
            form = random_antichain_form(rng, n + 1)
        except ValueError:
            continue
        done += 1
        cov = lattice_R(form)
        assert lattice_L(cov) == form


def test_lattice_maps_intertwine_the_operations():
    rng = rng_for("homomorphism")
    n = 2
    forms = fdl_enumerate(n + 1)
    for _ in range(100):
        f = forms[rng.randrange(len(forms))]
        g = forms[rng.randrange(len(forms))]
        assert lattice_R(fdl_join(f, g)) == lattice_R(f).union(lattice_R(g))
        assert lattice_R(fdl_meet(f, g)) == lattice_R(f).intersect(lattice_R(g))


def test_covering_lattice_sizes():
    assert len(covering_lattice(1)) == 4
    assert len(covering_lattice(2)) == 18
    assert len(set(covering_lattice(2))) == 18


def test_classical_freeness_verdicts():
    for n in (1, 2, 3):
        report = classical_freeness(n)
        assert report.free, report.witness


def test_chart_point_validation():
    ChartPoint([0.5, 1.0], 2)
    with pytest.raises(ValueError):
        ChartPoint([0.5, 1.0], 1)  # slot 1 is not on the circle
    with pytest.raises(ValueError):
        ChartPoint([0.5, 2.0], 2)  # modulus beyond the disc
    with pytest.raises(ValueError):
        ChartPoint([0.5, 1.0], 3)  # slot out of range


def test_chart_maps_invert():
    x = (1.0, 0.5 + 0.25j, -0.5j)
    coords = chart(0, x)
    assert coords == (0.5 + 0.25j, -0.5j)
    assert chart_inv(0, coords) == (1.0 + 0.0j, 0.5 + 0.25j, -0.5j)
    with pytest.raises(ValueError):
        chart(1, (1.0, 0.0, 0.5))


def test_transition_on_the_circle():
    # one dimension: the transition inverts the circle coordinate
    s = cmath.exp(0.7j)
    p = ChartPoint([s], 1)
    q = transition(p, 0, 1)
    assert abs(q.coords[0] - 1.0 / s) < TRANSITION_TOL
    assert q.circle_slot == slot_for(1, 0)
    back = transition_inverse(q, 0, 1)
    assert back.distance(p) < TRANSITION_TOL


def test_transition_validates_slots():
    p = ChartPoint([0.5, 1.0], 2)
    with pytest.raises(ValueError):
        transition(p, 0, 1)  # that transition needs the circle at slot 1
    with pytest.raises(ValueError):
        transition(p, 1, 1)
    with pytest.raises(ValueError):
        transition_inverse(p, 0, 2)  # inverse expects the circle at slot 1


def test_transition_matches_chart_composite():
    rng = rng_for("composite")
    for n in (1, 2, 3):
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                for _ in range(25):
                    x = random_overlap_point(rng, n, i, j)
                    p = chart_overlap_point(x, i, j)
                    via_formula = transition(p, i, j)
                    via_charts = chart_overlap_point(chart_inv(i, p.coords), j, i)
                    assert via_formula.distance(via_charts) < TRANSITION_TOL
                    back = transition_inverse(via_formula, i, j)
                    assert back.distance(p) < TRANSITION_TOL


def test_transition_agreement_report():
    report = transition_agreement(2, trials=50)
    assert report["passed"] is True
    assert report["max_error"] < report["tolerance"]
    assert report["check"] == "chart-transition-agreement"


def test_covering_generators_are_distinct():
    gens = covering_generators(2)
    assert len(set(gens)) == 3
    for i, g in enumerate(gens):
        assert g.contains_point(probe_point({i}, 2))
        assert not g.contains_point(probe_point({(i + 1) % 3}, 2))


def test_covering_set_json():
    v0 = CoveringSet.basic(1, 0)
    assert v0.to_json() == [[0], [0, 1]]
    form = AntichainForm.generator(0, 2)
    assert lattice_R(form).to_json() == [[0], [0, 1]]
