import pytest

from cubefree.construction import construction_size
from cubefree.detection import is_cube_free
from cubefree.errors import CapacityError
from cubefree.groups import GroupContext, ResidueSet, centred_set
from cubefree.counting import count_schur_triples
from cubefree.search import (
    cube_constraint_masks,
    degenerate_3cube_masks,
    export_cnf,
    export_lp,
    max_cube_free_exact,
    max_cube_free_layer_unions,
    min_schur_exhaustive,
    parse_assignment,
    union_max_dimension,
    validate_assignment,
)


def brute_force_max_cube_free(n, d):
    ctx = GroupContext(n)
    best = -1
    for mask in range(1 << ctx.modulus):
        if mask.bit_count() > best and is_cube_free(ResidueSet(ctx, mask), d):
            best = mask.bit_count()
    return best


def parse_dimacs(text):
    clauses = []
    num_vars = 0
    for line in text.splitlines():
        if line.startswith(("c", "p")) or not line.strip():
            if line.startswith("p"):
                num_vars = int(line.split()[2])
            continue
        lits = [int(tok) for tok in line.split()]
        assert lits[-1] == 0
        clauses.append(lits[:-1])
    return num_vars, clauses


def dpll(clauses, assignment):
    """Tiny complete SAT solver used as an independent oracle for the models."""
    while True:
        unit = None
        simplified = []
        for clause in clauses:
            undecided = []
            satisfied = False
            for lit in clause:
                value = assignment.get(abs(lit))
                if value is None:
                    undecided.append(lit)
                elif (lit > 0) == value:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not undecided:
                return None
            if len(undecided) == 1:
                unit = undecided[0]
            simplified.append(undecided)
        clauses = simplified
        if unit is None:
            break
        assignment = dict(assignment)
        assignment[abs(unit)] = unit > 0
    if not clauses:
        return assignment
    var = abs(clauses[0][0])
    for value in (True, False):
        trial = dict(assignment)
        trial[var] = value
        result = dpll(clauses, trial)
        if result is not None:
            return result
    return None


def test_exact_matches_brute_force_n3():
    for d in (1, 2, 3):
        expected = brute_force_max_cube_free(3, d)
        for mode in ("exhaustive", "branch_and_bound"):
            cert = max_cube_free_exact(GroupContext(3), d, mode=mode)
            assert cert.optimum == expected
            assert is_cube_free(cert.witness, d)
            assert len(cert.witness) == cert.optimum


def test_exact_small_values():
    assert max_cube_free_exact(GroupContext(3), 2, mode="exhaustive").optimum == 4
    assert max_cube_free_exact(GroupContext(4), 2).optimum == 8
    assert max_cube_free_exact(GroupContext(3), 3).optimum == 5
    assert max_cube_free_exact(GroupContext(4), 4).optimum == 12
    assert max_cube_free_exact(GroupContext(4), 3, symmetry=True).optimum == 10


def test_exact_confirms_construction_at_larger_cases():
    # theorem cases (d a power of two) and the first conjectured cases
    for n, d in [(4, 4), (4, 5), (4, 8), (5, 4)]:
        cert = max_cube_free_exact(GroupContext(n), d, symmetry=True)
        assert cert.optimum == construction_size(d, GroupContext(n))


def test_exact_search_without_construction_seed():
    # d = 6 does not fit inside Z_16, so the search starts from scratch
    cert = max_cube_free_exact(GroupContext(4), 6)
    assert cert.optimum == 13
    assert is_cube_free(cert.witness, 6)


def test_exact_budget_errors():
    with pytest.raises(CapacityError):
        max_cube_free_exact(GroupContext(3), 3, enum_budget=10)
    with pytest.raises(CapacityError):
        max_cube_free_exact(GroupContext(4), 3, mode="exhaustive", subset_budget=100)


def test_layer_union_certificates():
    cert = max_cube_free_layer_unions(GroupContext(5), 3)
    assert cert.optimum == 20
    assert cert.witness.members() == sorted(
        x for x in range(32) if x % 2 == 1 or x % 8 == 4)
    assert max_cube_free_layer_unions(GroupContext(4), 2).optimum == 8
    cert = max_cube_free_layer_unions(GroupContext(7), 7)
    assert cert.optimum == 108
    with pytest.raises(ValueError):
        max_cube_free_layer_unions(GroupContext(3), 4)


def test_layer_union_optimum_matches_construction_small():
    for n in range(1, 8):
        ctx = GroupContext(n)
        for d in range(1, n + 1):
            assert max_cube_free_layer_unions(ctx, d).optimum == \
                construction_size(d, ctx)


def test_union_max_dimension_independent_of_n():
    for indices in [(1,), (1, 3), (2, 3), (1, 2, 4)]:
        values = {union_max_dimension(indices, GroupContext(n), 10)
                  for n in range(max(indices), max(indices) + 3)}
        assert len(values) == 1


def test_min_schur_values():
    cert = min_schur_exhaustive(GroupContext(3), 5)
    assert cert.optimum == 12
    assert count_schur_triples(cert.witness) == 12
    assert cert.optimum == count_schur_triples(centred_set(5, GroupContext(3)))
    assert min_schur_exhaustive(GroupContext(3), 4).optimum == 0
    with pytest.raises(CapacityError):
        min_schur_exhaustive(GroupContext(5), 17)


def test_min_schur_symmetry_agrees():
    ctx = GroupContext(4)
    plain = min_schur_exhaustive(ctx, 6)
    reduced = min_schur_exhaustive(ctx, 6, symmetry=True)
    assert plain.optimum == reduced.optimum
    assert reduced.explored < plain.explored


def parse_lp_constraints(text):
    constraints = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("cube"):
            lhs, rhs = line.split("<=")
            vars_ = [int(tok.strip()[1:]) for tok in lhs.split(":")[1].split("+")]
            constraints.append((vars_, int(rhs)))
    return constraints


def lp_brute_force_optimum(text, size):
    constraints = parse_lp_constraints(text)
    return max(
        mask.bit_count() for mask in range(1 << size)
        if all(sum(mask >> v & 1 for v in vs) <= r for vs, r in constraints))


def test_lp_model_structure_and_optimum():
    ctx = GroupContext(3)
    text = export_lp(ctx, 3)
    assert text.startswith("\\ cube-free set model")
    assert "Maximize" in text and "Subject To" in text and "Binary" in text
    assert text.endswith("End\n")
    # brute-force the model over binary assignments: rows are <= constraints
    assert lp_brute_force_optimum(text, 8) == 5
    # d=2 model must cap at the odd layer size
    assert lp_brute_force_optimum(export_lp(ctx, 2), 8) == 4


def test_degenerate_pattern_masks():
    ctx = GroupContext(3)
    masks = degenerate_3cube_masks(ctx)
    assert masks and len(masks) == len(set(masks))
    from cubefree.detection import find_degenerate_3cube
    for m in masks:
        # each emitted mask is itself a cube of one of the two special shapes
        assert find_degenerate_3cube(ResidueSet(ctx, m)) is not None
    with pytest.raises(ValueError):
        export_lp(ctx, 2, patterns="degenerate")


def test_degenerate_pattern_optimum_matches_conjectured_value():
    # the largest set avoiding just the two special 3-cube shapes already
    # tops out at 5/8 of the group, so any larger set contains one of them
    from cubefree.construction import layered_construction
    from cubefree.search import _bnb_max
    for n in range(3, 7):
        ctx = GroupContext(n)
        masks = degenerate_3cube_masks(ctx)
        seed = layered_construction(3, ctx)
        assert all(c & ~seed.mask for c in masks)
        val, mask, nodes = _bnb_max(ctx.modulus, masks, len(seed), seed.mask,
                                    1 << 1, 10 ** 8)
        assert val == 5 * (1 << n) // 8
    # the LP form of the same model agrees by brute force at n = 3
    assert lp_brute_force_optimum(
        export_lp(GroupContext(3), 3, patterns="degenerate"), 8) == 5


def test_degenerate_export_at_desk_scale():
    # the restricted-pattern model stays emittable up to n=7
    ctx = GroupContext(7)
    text = export_lp(ctx, 3, patterns="degenerate")
    rows = sum(1 for line in text.splitlines() if line.strip().startswith("cube"))
    assert rows > 100
    assert text.endswith("End\n")


def test_cnf_satisfiability_matches_search():
    ctx = GroupContext(3)
    sat_cases = {5: True, 6: False}
    for target, expect in sat_cases.items():
        num_vars, clauses = parse_dimacs(export_cnf(ctx, 3, target))
        model = dpll(clauses, {})
        assert (model is not None) == expect
        if model is not None:
            chosen = [v - 1 for v in range(1, 9) if model.get(v)]
            report = validate_assignment(ctx, 3, {v: 1.0 for v in chosen})
            assert report["feasible"] and report["objective"] >= target
    num_vars, clauses = parse_dimacs(export_cnf(ctx, 2, 5))
    assert dpll(clauses, {}) is None
    num_vars, clauses = parse_dimacs(export_cnf(ctx, 2, 4))
    assert dpll(clauses, {}) is not None


def test_cnf_edge_targets():
    ctx = GroupContext(3)
    _, clauses = parse_dimacs(export_cnf(ctx, 3, 9))
    assert [] in clauses  # impossible target yields the empty clause
    _, clauses = parse_dimacs(export_cnf(ctx, 3, 0))
    assert dpll(clauses, {}) is not None


def test_parse_and_validate_assignment():
    ctx = GroupContext(3)
    text = "# solver output\nx1 1\nx3 1.0\nx5 0\n7 1\n"
    values = parse_assignment(text)
    assert values == {1: 1.0, 3: 1.0, 5: 0.0, 7: 1.0}
    report = validate_assignment(ctx, 2, text)
    assert report["selected"] == [1, 3, 7]
    assert report["objective"] == 3
    assert report["feasible"]  # odd residues are sum-free
    bad = validate_assignment(ctx, 2, {1: 1, 2: 1, 3: 1})
    assert not bad["feasible"]


def test_constraint_masks_are_minimal_and_complete():
    ctx = GroupContext(3)
    masks = cube_constraint_masks(ctx, 2)
    for m in masks:
        for other in masks:
            if other != m:
                assert other & ~m != 0  # no kept mask contains another
    # completeness: a set is 2-cube-free iff it contains no constraint mask
    for mask in range(256):
        feasible = all(c & ~mask for c in masks)
        assert feasible == is_cube_free(ResidueSet(ctx, mask), 2)
