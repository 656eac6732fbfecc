from itertools import combinations, combinations_with_replacement

import pytest

from cubefree.groups import GeneratorMultiset, GroupContext, scale_multiset
from cubefree.sumsets import incremental_sumset, iterated_sumset, projective_cube


def subset_sum_cube(elements, ctx):
    """Oracle: enumerate every nonempty index subset explicitly."""
    sums = set()
    for r in range(1, len(elements) + 1):
        for idx in combinations(range(len(elements)), r):
            sums.add(sum(elements[i] for i in idx) % ctx.modulus)
    return sums


def test_projective_cube_examples(ctx3):
    assert projective_cube(GeneratorMultiset.of(ctx3, (2, 5, 5))).members() == [2, 4, 5, 7]
    assert projective_cube(GeneratorMultiset.of(ctx3, (3, 3))).members() == [3, 6]
    assert projective_cube(GeneratorMultiset.of(ctx3, (1, 1, 1))).members() == [1, 2, 3]
    with pytest.raises(ValueError):
        projective_cube(GeneratorMultiset.of(ctx3, ()))


def test_iterated_sumset_examples(ctx3):
    assert iterated_sumset(GeneratorMultiset.of(ctx3, (2, 5, 5))).members() == [0, 2, 4, 5, 7]
    assert iterated_sumset(GeneratorMultiset.of(ctx3, ())).members() == [0]
    assert iterated_sumset(GeneratorMultiset.of(ctx3, (1, 7))).members() == [0, 1, 7]


def test_cube_matches_subset_enumeration_exhaustive():
    for n in (2, 3, 4):
        ctx = GroupContext(n)
        for size in (1, 2, 3):
            for elements in combinations_with_replacement(range(ctx.modulus), size):
                gens = GeneratorMultiset.of(ctx, elements)
                assert set(projective_cube(gens).members()) == subset_sum_cube(elements, ctx)


def test_cube_matches_subset_enumeration_sampled(rng):
    ctx = GroupContext(6)
    for _ in range(300):
        size = rng.randint(1, 6)
        elements = tuple(sorted(rng.randrange(ctx.modulus) for _ in range(size)))
        gens = GeneratorMultiset.of(ctx, elements)
        assert set(projective_cube(gens).members()) == subset_sum_cube(elements, ctx)


def test_cube_monotone_under_multiset_extension(rng):
    ctx = GroupContext(5)
    for _ in range(200):
        small = [rng.randrange(32) for _ in range(rng.randint(1, 4))]
        big = small + [rng.randrange(32) for _ in range(rng.randint(1, 3))]
        a = projective_cube(GeneratorMultiset.of(ctx, small))
        b = projective_cube(GeneratorMultiset.of(ctx, big))
        assert a.issubset(b)


def test_cube_scaling_equivariance(rng):
    ctx = GroupContext(5)
    for _ in range(200):
        gens = GeneratorMultiset.of(
            ctx, (rng.randrange(32) for _ in range(rng.randint(1, 5))))
        lam = rng.choice(range(1, 32, 2))
        assert projective_cube(scale_multiset(lam, gens)).mask == \
            projective_cube(gens).scaled(lam).mask


def test_incremental_sumset_examples(ctx3):
    trace = incremental_sumset(GeneratorMultiset.of(ctx3, (1, 1)))
    assert trace.prefix_sizes == (2, 3)
    assert trace.growth == (1, 1)
    trace = incremental_sumset(GeneratorMultiset.of(ctx3, (4, 4)))
    assert trace.prefix_sizes == (2, 2)
    assert trace.growth == (1, 0)
    trace = incremental_sumset(GeneratorMultiset.of(GroupContext(5), (9,)))
    assert trace.prefix_sizes == (2,)


def test_incremental_sumset_order_validation(ctx3):
    gens = GeneratorMultiset.of(ctx3, (1, 2))
    assert incremental_sumset(gens, (1, 0)).prefix_sizes[-1] == \
        len(iterated_sumset(gens))
    with pytest.raises(ValueError):
        incremental_sumset(gens, (0, 0))


def test_stalled_step_contains_generated_subgroup():
    # zero growth forces the cyclic subgroup generated by the new element,
    # hence both 0 and 2^(n-1), into the sumset
    for n in (3, 4):
        ctx = GroupContext(n)
        half = 1 << (n - 1)
        for size in (2, 3, 4):
            for elements in combinations_with_replacement(range(1, ctx.modulus), size):
                gens = GeneratorMultiset.of(ctx, elements)
                trace = incremental_sumset(gens)
                for pos, grew in enumerate(trace.growth):
                    if grew:
                        continue
                    prior = iterated_sumset(
                        GeneratorMultiset.of(ctx, gens.elements[:pos]))
                    a = gens.elements[pos]
                    value = a
                    while True:
                        assert value in prior
                        if value == 0:
                            break
                        value = (value + a) % ctx.modulus
                    assert half in prior


def test_trace_final_size_matches_iterated_sumset(rng):
    ctx = GroupContext(5)
    for _ in range(200):
        gens = GeneratorMultiset.of(
            ctx, (rng.randrange(32) for _ in range(rng.randint(1, 5))))
        trace = incremental_sumset(gens)
        assert trace.prefix_sizes[-1] == len(iterated_sumset(gens))
        assert all(g >= 0 for g in trace.growth)
