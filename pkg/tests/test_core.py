import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gromovclass.core import (
    GromovStructure,
    Permutation,
    apply_permutation,
    from_code,
    make_structure,
    pair_table,
    parse,
    serialize,
    to_code,
)
from gromovclass.errors import (
    DuplicateNode,
    IndexOutOfRange,
    LengthMismatch,
    MalformedToken,
    PairContainsOwner,
    ValidationError,
    WrongTokenCount,
)

X4 = "124,213,324,413"


def structures(n):
    def pick(a):
        others = [x for x in range(1, n + 1) if x != a]
        return st.lists(st.sampled_from(others), min_size=2, max_size=2, unique=True).map(lambda p: tuple(sorted(p)))

    return st.tuples(*[pick(a) for a in range(1, n + 1)]).map(lambda picks: GromovStructure(n, picks))


def permutations_of(n):
    return st.permutations(list(range(1, n + 1))).map(lambda xs: Permutation(tuple(xs)))


@pytest.mark.parametrize(
    "text",
    [X4, "124 213 324 413", "124,213\n324  413", "1:2,4; 2:1,3; 3:2,4; 4:1,3", " 142, 231, 342, 431 "],
)
def test_parse_accepts_all_notations(text):
    assert serialize(parse(text)) == X4


@pytest.mark.parametrize(
    "text,n,error",
    [
        ("124,124,324,413", None, DuplicateNode),
        ("124,213,324", 4, WrongTokenCount),
        ("124,213,324,413,513", 4, WrongTokenCount),
        ("121,213,324,413", None, PairContainsOwner),
        ("125,213,324,413", 4, IndexOutOfRange),
        ("12x,213,324,413", None, MalformedToken),
        ("", None, ValidationError),
        ("124,213,314", None, ValidationError),
    ],
)
def test_parse_rejects(text, n, error):
    with pytest.raises(error):
        parse(text, n)


def test_make_structure_from_mapping_and_pairs_sorted():
    s = make_structure(4, {1: (4, 2), 2: (3, 1), 3: (2, 4), 4: (3, 1)})
    assert s.pick(1) == (2, 4)
    assert serialize(s) == X4
    assert s.image() == frozenset({(2, 4), (1, 3)})


def test_long_form_for_large_n():
    s = GromovStructure(10, tuple((1, 2) if a > 2 else ((2, 3) if a == 1 else (1, 3)) for a in range(1, 11)))
    text = serialize(s)
    assert text.startswith("1:2,3;")
    assert parse(text) == s


def test_permutation_algebra():
    p = Permutation((2, 3, 1, 4))
    q = Permutation((1, 3, 2, 4))
    assert p.compose(q)(1) == p(q(1))
    assert p.compose(p.inverse()) == Permutation.identity(4)
    with pytest.raises(ValidationError):
        Permutation((1, 1, 2, 3))


def test_apply_permutation_relabels_owner_and_pair():
    s = parse(X4)
    t = apply_permutation(s, Permutation((2, 1, 3, 4)))
    # node 1 picked {2,4}; it becomes node 2 picking {1,4}
    assert t.pick(2) == (1, 4)
    with pytest.raises(LengthMismatch):
        apply_permutation(s, Permutation.identity(5))


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 8).flatmap(lambda n: st.tuples(structures(n), permutations_of(n))))
def test_relabeling_is_a_group_action(sp):
    s, p = sp
    assert apply_permutation(apply_permutation(s, p), p.inverse()) == s
    assert parse(serialize(s)) == s
    assert from_code(s.n, to_code(s)) == s


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 7).flatmap(lambda n: st.tuples(structures(n), structures(n))))
def test_code_order_matches_serialization_order(pair):
    a, b = pair
    tokens = lambda s: [tuple(map(int, t)) for t in serialize(s).split(",")]  # noqa: E731
    assert (to_code(a) < to_code(b)) == (tokens(a) < tokens(b))


def test_pair_table_is_lexicographic():
    pairs, index = pair_table(5)
    assert list(pairs) == sorted(pairs)
    assert all(index[p] == i for i, p in enumerate(pairs))
