from fractions import Fraction

import pytest

from weakfront.cones import Cone, LinOp, PosOp
from weakfront.conjugate import (
    ExtEpiElement,
    SampledMap,
    SearchConfig,
    boxplus,
    compose,
    conjugate,
    epi_membership,
    exepi_membership,
    psi_contains,
    split_witness,
    witness_translate,
)
from weakfront.instances import build_linear_pair
from weakfront.order_sets import (
    GenSet,
    Orient,
    RegionLabel,
    Tag,
    set_preceq,
    ws_sum,
    wsup_finite,
    FiniteVecSet,
)

O1 = Cone.orthant(1)
O2 = Cone.orthant(2)


def scalar_map(values):
    """f on {0, 1, ..., len-1} with the given values."""
    return SampledMap(
        [((Fraction(i),), (Fraction(v),)) for i, v in enumerate(values)]
    )


def test_sampled_map_basics():
    f = scalar_map([0, 1, 4])
    assert f.in_dim == 1 and f.out_dim == 1
    assert f.value((Fraction(1),)) == (1,)
    assert f.value((Fraction(7),)) is None
    assert f.domain() == ((0,), (1,), (2,))


def test_sampled_map_rejects_conflicting_samples():
    with pytest.raises(ValueError):
        SampledMap([((0,), (1,)), ((0,), (2,))])


def test_indicator_and_linear_constructors():
    ind = SampledMap.indicator([(0,), (1,)], 1)
    assert ind.value((0,)) == (0,) and ind.value((2,)) is None
    lin = SampledMap.linear(LinOp(((2,),)), [(0,), (3,)])
    assert lin.value((3,)) == (6,)


def test_restrict_and_add_intersect_domains():
    f = scalar_map([0, 1, 4])
    g = SampledMap([((Fraction(1),), (Fraction(10),)), ((Fraction(5),), (Fraction(0),))])
    h = f.add(g)
    assert h.domain() == ((1,),)
    assert h.value((1,)) == (11,)
    r = f.restrict([(0,), (1,)])
    assert r.domain() == ((0,), (1,))


def test_compose_applies_the_operator_pointwise():
    g = scalar_map([1, 0, -1])  # g(x) = 1 - x
    T = PosOp(LinOp(((Fraction(2),),)), O1, O1)
    tg = compose(T, g)
    assert tg.value((0,)) == (2,)
    assert tg.value((2,)) == (-2,)


def test_conjugate_of_the_identity_map():
    f = scalar_map([0, 1, 2])  # f(x) = x
    W = conjugate(f, LinOp(((Fraction(1),),)), O1)
    # sup {x - x} = 0
    assert W.tag is Tag.FINITE and W.orient is Orient.SUP
    assert W.generators.points == ((0,),)
    W0 = conjugate(f, LinOp.zero(1, 1), O1)
    assert W0.generators.points == ((0,),)


def test_conjugate_vector_valued_constant_difference():
    # F(x) = (x, 2 - x); L = (1, -1) makes L(x) - F(x) constant (0, -2)
    F = SampledMap(
        [((Fraction(x),), (Fraction(x), Fraction(2 - x))) for x in range(3)]
    )
    L = LinOp(((Fraction(1),), (Fraction(-1),)))
    W = conjugate(F, L, O2)
    assert W.generators.points == ((0, -2),)


def test_conjugate_needs_samples():
    f = scalar_map([0, 1])
    with pytest.raises(ValueError):
        conjugate(f.restrict([(9,)]), LinOp.zero(1, 1), O1)


def test_epi_membership_is_the_conjugate_region_test():
    f = scalar_map([0, 1, 2])
    L0 = LinOp.zero(1, 1)
    assert not epi_membership(f, L0, (Fraction(-1),), O1)
    assert epi_membership(f, L0, (Fraction(0),), O1)
    assert epi_membership(f, L0, (Fraction(1),), O1)


def test_ext_epi_elements_need_finite_bounds():
    U = wsup_finite(FiniteVecSet([(Fraction(0),)]), O1)
    ExtEpiElement(LinOp.zero(1, 1), U)  # fine
    with pytest.raises(ValueError):
        ExtEpiElement(LinOp.zero(1, 1), GenSet.plus_inf(O1))


def test_exepi_membership_accepts_valid_bounds_only():
    f = scalar_map([0, 1, 2])
    L0 = LinOp.zero(1, 1)
    exact = conjugate(f, L0, O1)
    assert exepi_membership(f, ExtEpiElement(L0, exact), O1)
    above = exact.translate((Fraction(1),))
    assert exepi_membership(f, ExtEpiElement(L0, above), O1)
    below = exact.translate((Fraction(-1),))
    assert not exepi_membership(f, ExtEpiElement(L0, below), O1)


def test_boxplus_adds_operators_and_ws_sums_bounds():
    f1 = scalar_map([0, 1, 2])
    f2 = scalar_map([2, 1, 0])
    L1 = LinOp(((Fraction(1),),))
    L2 = LinOp.zero(1, 1)
    e = boxplus(
        ExtEpiElement(L1, conjugate(f1, L1, O1)),
        ExtEpiElement(L2, conjugate(f2, L2, O1)),
    )
    assert e.op == L1 + L2
    assert e.bound == ws_sum(conjugate(f1, L1, O1), conjugate(f2, L2, O1))
    # the element certifies a bound for f1 + f2
    assert exepi_membership(f1.add(f2), e, O1)


def test_witness_translate_measures_the_slide():
    U = wsup_finite(FiniteVecSet([(Fraction(0),)]), O1)
    # t is the slide making y a frontier point of U + t*k0; negative means
    # y sits strictly below U
    assert witness_translate(U, (Fraction(-2),)) == -2
    assert witness_translate(U, (Fraction(0),)) == 0
    assert witness_translate(U, (Fraction(3),)) == 3
    with pytest.raises(ValueError):
        witness_translate(GenSet.plus_inf(O1), (Fraction(0),))


def test_psi_contains_equals_epi_membership():
    F = SampledMap(
        [((Fraction(x),), (Fraction(x), Fraction(x * x))) for x in range(-2, 3)]
    )

    def family(L, U):
        return set_preceq(conjugate(F, L, O2), U)

    for a in (-1, 0, 1):
        L = LinOp(((Fraction(a),), (Fraction(0),)))
        for y in [(0, 0), (2, 2), (-3, 0), (Fraction(1, 2), Fraction(9, 2))]:
            y = tuple(map(Fraction, y))
            assert psi_contains(family, L, y, O2) == epi_membership(F, L, y, O2)


def test_psi_candidates_never_flip_the_answer():
    F = SampledMap(
        [((Fraction(x),), (Fraction(x), Fraction(1 - x))) for x in range(3)]
    )

    def family(L, U):
        return set_preceq(conjugate(F, L, O2), U)

    L = LinOp.zero(2, 1)
    good = conjugate(F, L, O2)
    junk = good.translate((Fraction(-5), Fraction(-5)))  # fails the family test
    for y in [(0, 0), (0, 1), (-1, -1), (3, 3)]:
        y = tuple(map(Fraction, y))
        want = epi_membership(F, L, y, O2)
        assert psi_contains(family, L, y, O2, candidates=(junk, good)) == want


def test_search_config_puts_hints_before_the_grid():
    hint = LinOp(((Fraction(7),),))
    cfg = SearchConfig(t_box=1, t_step=1, hints_T=(hint,))
    ops = [T.op for T in cfg.posop_budget(O1, O1)]
    assert ops[0] == hint
    assert LinOp.zero(1, 1) in ops
    # box 0 keeps only hints and zero
    lean = SearchConfig(t_box=0, hints_T=(hint,))
    assert [T.op for T in lean.posop_budget(O1, O1)] == [hint, LinOp.zero(1, 1)]


def test_linop_budget_dedups_hints():
    hint = LinOp.zero(1, 1)
    cfg = SearchConfig(l_box=0, hints_L=(hint, hint))
    assert list(cfg.linop_budget(1, 1)) == [hint]


def test_split_witness_on_a_linear_pair():
    pair = build_linear_pair(1)
    K = pair.K
    cfg = SearchConfig(l_box=0, hints_L=pair.hints_L)
    L = pair.hints_L[0]  # the first summand's own matrix: always splittable
    front = conjugate(pair.summed(), L, K)
    y = front.generators.points[0]
    hit = split_witness(pair.F1, pair.F2, L, y, K, cfg)
    assert hit is not None
    l1, l2, u1, u2 = hit
    assert l1 + l2 == L
    assert exepi_membership(pair.F1, ExtEpiElement(l1, u1), K)
    assert exepi_membership(pair.F2, ExtEpiElement(l2, u2), K)
    assert ws_sum(u1, u2).classify(y) is RegionLabel.FRONTIER
    # strictly below the frontier no split can exist
    below = tuple(a - b for a, b in zip(y, K.interior_witness))
    assert split_witness(pair.F1, pair.F2, L, below, K, cfg) is None
