import random
from fractions import Fraction

import pytest

from gromovclass.canon import canonical_form
from gromovclass.core import Permutation, apply_permutation, from_code, parse
from gromovclass.enumerate import allowable_codes
from gromovclass.errors import NotAllowable, NotGeneric
from gromovclass.fixtures import bundled_fixture
from gromovclass.genericity import build_problem, realize_metric, solve
from gromovclass.matrixrep import chain_decomposition
from gromovclass.metric import structure_of_metric, verify_gromov_identities

X4 = parse("124,213,324,413")
CYCLE7 = parse("127,213,324,435,546,657,716")


def six_point_classes():
    reps = {}
    for code in allowable_codes(6):
        cf = canonical_form(from_code(6, code))
        reps.setdefault(cf.text, cf.structure)
    return reps


@pytest.mark.parametrize(
    "s,counts",
    [(X4, (12, 6, 12, 8)), (CYCLE7, (105, 84, 105, 98))],
)
def test_problem_sizes(s, counts):
    p = build_problem(s)
    assert (p.n_variables, len(p.equalities), len(p.positivity), len(p.minimality)) == counts
    assert len(p.normalization) == p.n_variables


def test_uniform_assignment_satisfies_equalities():
    p = build_problem(X4)
    u = Fraction(1, 12)
    assert all(sum(c * u for c in row.values()) == 0 for row in p.equalities)
    assert sum(c * u for c in p.normalization.values()) == 1


def test_non_allowable_is_a_usage_error():
    with pytest.raises(NotAllowable):
        build_problem(parse("124,214,324,413"))


def assert_valid_witness(s, verdict):
    t = verdict.witness
    assert verify_gromov_identities(t)
    values = dict(t.delta)
    assert min(values.values()) >= verdict.margin > 0
    for a in range(1, s.n + 1):
        chosen = values[(a, s.pick(a))]
        for (i, pair), v in values.items():
            if i == a and pair != s.pick(a):
                assert v - chosen >= verdict.margin


def test_four_point_structure_is_generic():
    v = solve(build_problem(X4))
    assert v.generic
    assert_valid_witness(X4, v)


def test_six_point_reference_list_is_generic():
    for _, row in bundled_fixture(6).rows():
        v = solve(build_problem(row.structure))
        assert v.generic, row.line
        assert_valid_witness(row.structure, v)


def test_some_allowable_six_point_classes_are_not_generic():
    verdicts = {text: solve(build_problem(s)) for text, s in six_point_classes().items()}
    failed = [t for t, v in verdicts.items() if not v.generic]
    assert len(verdicts) == 32
    assert len(failed) == 6
    assert all(verdicts[t].witness is None and verdicts[t].margin <= 0 for t in failed)


def test_realize_round_trip_and_scaling():
    d = realize_metric(X4)
    assert all(x.denominator == 1 for row in d.d for x in row)
    assert structure_of_metric(d) == X4
    assert structure_of_metric(d.scaled(3)) == X4
    c = realize_metric(CYCLE7)
    comps = chain_decomposition(structure_of_metric(c)).components
    assert [(kind, len(nodes)) for kind, nodes in comps] == [("cycle", 7)]


def test_realize_rejects_non_generic():
    bad = next(s for s in six_point_classes().values() if not solve(build_problem(s)).generic)
    with pytest.raises(NotGeneric):
        realize_metric(bad)


def test_deterministic():
    a, b = solve(build_problem(CYCLE7)), solve(build_problem(CYCLE7))
    assert a.margin == b.margin and a.witness == b.witness


def test_orbit_invariance():
    rng = random.Random(11)
    for s in list(six_point_classes().values())[:12]:
        base = solve(build_problem(s))
        images = list(range(1, 7))
        rng.shuffle(images)
        moved = solve(build_problem(apply_permutation(s, Permutation(tuple(images)))))
        assert moved.generic == base.generic
        assert moved.margin == base.margin


def test_margins_agree_with_floating_point_solver():
    scipy_opt = pytest.importorskip("scipy.optimize")
    import numpy as np

    for s in list(six_point_classes().values()):
        p = build_problem(s)
        nv = p.n_variables
        rows = [r for r in p.positivity + p.minimality]
        A_ub = np.zeros((len(rows), nv + 1))
        for k, r in enumerate(rows):
            for v, coef in r.items():
                A_ub[k, v] = -coef
            A_ub[k, nv] = 1
        A_eq = np.zeros((len(p.equalities) + 1, nv + 1))
        for k, r in enumerate(p.equalities):
            for v, coef in r.items():
                A_eq[k, v] = coef
        A_eq[-1, :nv] = 1
        b_eq = np.zeros(len(A_eq))
        b_eq[-1] = 1
        ref = scipy_opt.linprog(
            np.r_[np.zeros(nv), -1], A_ub=A_ub, b_ub=np.zeros(len(rows)), A_eq=A_eq, b_eq=b_eq,
            bounds=[(None, None)] * (nv + 1), method="highs",
        )
        assert ref.status == 0
        assert abs(-ref.fun - float(solve(p).margin)) < 1e-9
