"""The tree driver: growing, reinforcing, and the full tropicalization."""

import random
from fractions import Fraction

import pytest

from helpers import (
    QQ,
    close_roots_system,
    const,
    mconst,
    mpoly,
    ps,
    root,
    three_var_system,
    tp,
    uc,
    upoly,
    xvar,
)
from troptri import (
    NonSplittingError,
    NonTriangularError,
    PrecisionLimitError,
    RootTree,
    TriangularSystem,
    starting_tree,
    trop_triangular,
)


def fr(a, b=1):
    return Fraction(a, b)


def test_starting_tree_is_a_single_vertex():
    tree = starting_tree(three_var_system(), 1, 10)
    assert len(tree.vertices) == 1
    assert tree.vertices[tree.root_id].root is None
    assert tree.grow_count == 0 and tree.reinforce_count == 0


def test_starting_tree_validates_parameters():
    with pytest.raises(ValueError):
        starting_tree(three_var_system(), 0, 10)
    with pytest.raises(ValueError):
        starting_tree(three_var_system(), 1, -1)


def test_triangular_validation():
    f1 = mpoly(2, {(1, 0): const(1)})  # x1
    bad_f2 = mpoly(2, {(1, 0): const(1), (0, 0): const(1)})  # x1 + 1, no x2
    with pytest.raises(NonTriangularError):
        TriangularSystem([f1, bad_f2])
    f2 = xvar(2, 1) - mconst(2, const(1))
    TriangularSystem([f1, f2])  # fine


def test_extension_polynomial_at_the_tree_root():
    tree = starting_tree(close_roots_system(), 2, 2)
    ext = tree.extension_polynomial(tree.root_id)
    assert ext.variables() == set()
    assert sorted(ext.coeffs) == [0, 1, 2]


def test_extension_polynomial_with_bare_tail():
    tree = starting_tree(close_roots_system(), 2, 2)
    tree.grow(tree.root_id)
    (child,) = tree.vertices[tree.root_id].children
    ext = tree.extension_polynomial(child)
    # x2 - u1 + 1 + t
    assert ext == upoly(2, 1, {1: const(1), 0: uc(2, (const(-1), (1, 0)), (ps((0, 1), (1, 1)), (0, 0)))})


def test_extension_polynomial_with_refined_root():
    tree = starting_tree(close_roots_system(), 2, 2)
    tree.grow(tree.root_id)
    (child,) = tree.vertices[tree.root_id].children
    tree.vertices[child].root = root(0, [(0, 1), (1, 1)], 2)
    ext = tree.extension_polynomial(child)
    assert ext == upoly(2, 1, {1: const(1), 0: uc(2, (tp(2, -1), (1, 0)))})


def test_reinforcement_polynomial_for_bare_root_is_f1():
    tree = starting_tree(close_roots_system(), 2, 2)
    tree.grow(tree.root_id)
    (child,) = tree.vertices[tree.root_id].children
    reinf = tree.reinforcement_polynomial(child)
    assert reinf == tree.extension_polynomial(tree.root_id)


def test_reinforcement_polynomial_recenters_at_known_part():
    from helpers import paper_f2_tilde

    # shifted by the known part only; rescaling by the tail exponent
    # reproduces the fully zoomed form
    tree = starting_tree(close_roots_system(), 2, 2)
    tree.grow(tree.root_id)
    (child,) = tree.vertices[tree.root_id].children
    tree.vertices[child].root = root(0, [(0, 1)], 1)
    reinf = tree.reinforcement_polynomial(child)
    direct = tree.extension_polynomial(tree.root_id).shift_substitute(const(1), 0)
    assert reinf == direct


def test_reinforcement_polynomial_requires_depth():
    tree = starting_tree(close_roots_system(), 2, 2)
    with pytest.raises(ValueError):
        tree.reinforcement_polynomial(tree.root_id)


def test_grow_attaches_children_by_descending_valuation():
    f1 = mpoly(1, {(2,): tp(1), (1,): const(1), (0,): const(1)})
    tree = starting_tree(TriangularSystem([f1]), 1, 8)
    tree.grow(tree.root_id)
    kids = [tree.vertices[c].root for c in tree.vertices[tree.root_id].children]
    assert [k.valuation() for k in kids] == [fr(0), fr(-1)]
    assert all(k.known == () and k.tail is not None for k in kids)
    assert all(tree.vertices[c].prec == 0 for c in tree.vertices[tree.root_id].children)


def test_grow_single_tropical_point():
    tree = starting_tree(close_roots_system(), 2, 2)
    tree.grow(tree.root_id)
    assert len(tree.vertices[tree.root_id].children) == 1


def test_grow_dead_branch_on_monomial_extension():
    # f2 = x1 * x2 collapses to a monomial once x1 is exactly 1
    f1 = xvar(2, 0) - mconst(2, const(1))
    f2 = xvar(2, 0) * xvar(2, 1)
    tree = starting_tree(TriangularSystem([f1, f2]), 1, 8)
    tree.run()
    assert tree.point_set() == set()
    dead = [v for v in tree.vertices.values() if v.dead]
    assert len(dead) == 1


def test_reinforce_splits_the_close_roots():
    tree = starting_tree(close_roots_system(), 2, 2)
    tree.grow(tree.root_id)
    (child,) = tree.vertices[tree.root_id].children
    tree.reinforce(child)
    kids = [tree.vertices[c] for c in tree.vertices[tree.root_id].children]
    assert len(kids) == 2
    roots = {k.root for k in kids}
    assert roots == {root(0, [(0, 1), (2, 1)], None), root(0, [(0, 1), (1, 1)], 2)}
    assert all(k.prec == 2 for k in kids)


def test_reinforce_respects_precision_bound():
    tree = starting_tree(close_roots_system(), 2, 2)
    tree.grow(tree.root_id)
    (child,) = tree.vertices[tree.root_id].children
    tree.vertices[child].prec = fr(1)
    tree.p_step = fr(2)
    with pytest.raises(PrecisionLimitError):
        tree.reinforce(child)


def test_full_run_three_variables():
    tree = RootTree(three_var_system(), 1, 32)
    tree.run()
    assert tree.points() == [
        (fr(0), fr(0), fr(0)),
        (fr(0), fr(-1), fr(1)),
        (fr(-1), fr(1), fr(0)),
        (fr(-1), fr(-1), fr(2)),
    ]
    assert tree.reinforce_count == 0
    tree.check_invariants()


def test_full_run_close_roots_counters():
    tree = RootTree(close_roots_system(), 2, 2)
    tree.run()
    assert tree.point_set() == {(fr(0), fr(1)), (fr(0), fr(2))}
    assert tree.reinforce_count == 1
    assert tree.grow_count == 3
    tree.check_invariants()

    tree2 = RootTree(close_roots_system(), 1, 2)
    tree2.run()
    assert tree2.point_set() == {(fr(0), fr(1)), (fr(0), fr(2))}
    assert tree2.reinforce_count == 2
    tree2.check_invariants()


def test_single_linear_polynomial():
    f1 = mpoly(1, {(1,): const(1), (0,): tp(1, -1)})  # x1 - t
    assert trop_triangular(TriangularSystem([f1])) == {(fr(1),)}


def test_precision_limit_aborts():
    # roots agreeing through t^3 but a bound too small to separate them
    x1 = xvar(2, 0)
    f1 = (x1 - mconst(2, ps((0, 1), (1, 1)))) * (x1 - mconst(2, ps((0, 1), (1, 1), (3, 1))))
    f2 = xvar(2, 1) - x1 + mconst(2, ps((0, 1), (1, 1)))
    system = TriangularSystem([f1, f2])
    with pytest.raises(PrecisionLimitError):
        trop_triangular(system, p_step=1, p_max=1)
    assert trop_triangular(system, p_step=1, p_max=4) == {(fr(0), fr(3))}


def test_nonsplitting_propagates_from_reinforcement():
    x1 = xvar(2, 0)
    f1 = x1 * x1 - mconst(2, const(2))
    f2 = xvar(2, 1) - x1 + mconst(2, const(1))
    system = TriangularSystem([f1, f2])
    with pytest.raises(NonSplittingError) as err:
        trop_triangular(system)
    assert err.value.source == "f1"


def test_determinism():
    for system_builder in (three_var_system, close_roots_system):
        a = RootTree(system_builder(), 1, 32)
        a.run()
        b = RootTree(system_builder(), 1, 32)
        b.run()
        assert a.points() == b.points()
        assert a.to_json_dict() == b.to_json_dict()


def test_invariants_hold_after_every_step():
    tree = RootTree(close_roots_system(), 1, 2)
    while tree.step():
        tree.check_invariants()


def test_exact_roots_are_never_reinforced():
    tree = RootTree(close_roots_system(), 2, 2)
    tree.run()
    exacts = [v for v in tree.vertices.values() if v.root is not None and v.root.is_exact]
    assert exacts
    for v in exacts:
        assert v.root == root(0, [(0, 1), (2, 1)], None)


def test_tree_json_shape():
    tree = RootTree(close_roots_system(), 2, 2)
    tree.run()
    data = tree.to_json_dict()
    assert data["root"] == 0
    by_id = {v["id"]: v for v in data["vertices"]}
    assert by_id[data["root"]]["parent"] is None
    depth_one = [v for v in data["vertices"] if v["parent"] == data["root"]]
    assert {v["valuation"] for v in depth_one} == {"0"}
    assert {v["exact"] for v in depth_one} == {True, False}
    leaves = [v for v in data["vertices"] if v["parent"] not in (None, data["root"])]
    assert {v["valuation"] for v in leaves} == {"1", "2"}


def test_deep_reinforcement_refreshes_stale_descendants(monkeypatch):
    # two close roots at depth 1, and a third coordinate whose polygon only
    # stabilizes after the depth-2 root is recomputed with the improved
    # depth-1 root; records which branch vertex each reinforcement targets
    x1, x2, x3 = xvar(3, 0), xvar(3, 1), xvar(3, 2)
    f1 = (x1 - mconst(3, ps((0, 1), (1, 1)))) * (x1 - mconst(3, ps((0, 1), (1, 1), (2, 1))))
    f2 = x2 - x1 + mconst(3, const(1))
    f3 = x3 - x2 + mconst(3, tp(1))
    system = TriangularSystem([f1, f2, f3])

    targets = []
    original = RootTree.reinforce

    def spy(self, vid):
        chain = self.branch(vid)
        head = chain[0].prec
        stale = [
            i for i in range(1, len(chain))
            if not chain[i].root.is_exact and chain[i].prec < head
        ]
        targets.append(stale[0] + 1 if stale else 1)
        return original(self, vid)

    monkeypatch.setattr(RootTree, "reinforce", spy)
    tree = RootTree(system, 1, 8)
    tree.run()
    # the only torus solution is (1+t+t^2, t+t^2, t^2)
    assert tree.point_set() == {(fr(0), fr(1), fr(2))}
    assert 2 in targets and 1 in targets
    tree.check_invariants()


def test_prime_field_system_end_to_end():
    from troptri import parse_system

    text = (
        "ring x1 x2 fp:5\n"
        "poly (x1 - 1 - t)*(x1 - 2 - t)\n"
        "poly x2 - (x1 - 1 - t)\n"
    )
    # x1 = 1+t forces x2 = 0, which is not a torus point; only x1 = 2+t
    # contributes, with x2 = 1
    assert trop_triangular(parse_system(text)) == {(fr(0), fr(0))}


def test_random_oracle_systems_small():
    from oracle_systems import random_system_with_expected_points

    rng = random.Random(424242)
    for _ in range(25):
        system, expected = random_system_with_expected_points(rng)
        assert trop_triangular(system) == expected
