import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grover_lab.diagram import (
    Comult,
    Counit,
    Mult,
    Point,
    PointEffect,
    RepBox,
    Unit,
    compose,
    identity_diagram,
    make_generator,
    tensor,
)
from grover_lab.errors import NotClosedError
from grover_lab.spaces import Z2, set_space
from grover_lab.tensor_eval import eval_generator, evaluate, scalar_of

from conftest import assert_close
from oracles import random_diagram, split_diagram


def test_mult_matrix():
    s = set_space("S", 2)
    assert_close(eval_generator(Mult(s)), [[1, 0, 0, 0], [0, 0, 0, 1]])


def test_unit_is_all_ones_column():
    s = set_space("S", 3)
    assert_close(eval_generator(Unit(s)), [[1], [1], [1]])


def test_comult_counit_are_transposes():
    s = set_space("S", 3)
    assert_close(eval_generator(Comult(s)), eval_generator(Mult(s)).T)
    assert_close(eval_generator(Counit(s)), eval_generator(Unit(s)).T)


def test_sign_rep_at_element_one_is_minus_one():
    m = eval_generator(RepBox(Z2, 1))
    assert_close(m, [[1, -1]])


def test_point_inner_products():
    s = set_space("S", 4)
    same = compose(make_generator(Point(s, 0)), make_generator(PointEffect(s, 0)))
    other = compose(make_generator(Point(s, 0)), make_generator(PointEffect(s, 2)))
    assert scalar_of(same) == 1.0
    assert scalar_of(other) == 0.0


def test_counit_of_unit_is_set_size():
    s = set_space("S", 4)
    d = compose(make_generator(Unit(s)), make_generator(Counit(s)))
    assert scalar_of(d) == 4.0


def test_empty_diagram_is_scalar_one():
    from grover_lab.diagram import EMPTY

    assert scalar_of(EMPTY) == 1.0


def test_scalar_of_rejects_open_diagram():
    s = set_space("S", 2)
    with pytest.raises(NotClosedError):
        scalar_of(make_generator(Unit(s)))


@pytest.mark.parametrize("dim", [2, 3, 5, 16])
def test_specialness_exact(dim):
    # m after m† is the identity, with exact 0/1 entries
    s = set_space("S", dim)
    d = compose(make_generator(Comult(s)), make_generator(Mult(s)))
    assert np.array_equal(evaluate(d).matrix, np.eye(dim))


@pytest.mark.parametrize("dim", [2, 3, 8])
def test_frobenius_condition_exact(dim):
    s = set_space("S", dim)
    ident = identity_diagram([s])
    left = compose(
        tensor(ident, make_generator(Comult(s))),
        tensor(make_generator(Mult(s)), ident),
    )
    right = compose(make_generator(Mult(s)), make_generator(Comult(s)))
    assert np.array_equal(evaluate(left).matrix, evaluate(right).matrix)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10))
def test_functoriality_over_random_splits(seed, cut):
    d = random_diagram(random.Random(seed))
    a, b = split_diagram(d, cut % (len(d.slices) + 1))
    assert_close(evaluate(compose(a, b)).matrix, evaluate(b).matrix @ evaluate(a).matrix)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_monoidality_is_kronecker(seed_a, seed_b):
    a = random_diagram(random.Random(seed_a), max_slices=3)
    b = random_diagram(random.Random(seed_b), max_slices=3)
    t = tensor(a, b)
    assert_close(evaluate(t).matrix, np.kron(evaluate(a).matrix, evaluate(b).matrix))
