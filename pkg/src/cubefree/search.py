"""Exact extremal searches and solver-model export.

The maximum cube-free search works on the complete, deduplicated family of
cube masks for the requested dimension: a subset is feasible iff it fully
contains none of them.  Dominated masks (supersets of another cube) are
dropped since the smaller cube's constraint implies theirs.  The exact
search branches on the elements of a smallest open constraint (every
feasible improvement must exclude one of them), with a greedy
disjoint-constraint packing as the lower bound on further exclusions and
the layered construction as the initial incumbent.

The layer-union search tests the 2^(n+1) unions in decreasing size order
with the scale-invariant detection engine; each union is analysed in the
smallest group containing its top layer, so sweeps over many dimensions
and group sizes share the detection memo.

No external solver is embedded: LP and DIMACS models are emitted as text,
and a separate validator re-checks solver output against the actual
cube-freeness predicate.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from .construction import construction_layers, layered_construction
from .counting import count_schur_triples
from .detection import find_degenerate_3cube, is_cube_free, max_cube_dimension
from .errors import CapacityError
from .groups import GroupContext, ResidueSet, _layer_mask, mask_members
from .sumsets import cube_mask

DEFAULT_ENUM_BUDGET = 5_000_000
DEFAULT_SUBSET_BUDGET = 1 << 20
DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_COMBO_BUDGET = 1_000_000


@dataclass(frozen=True)
class SearchCertificate:
    """Search outcome: the optimum, one witness attaining it, and statistics."""

    mode: str  # "exhaustive" | "branch_and_bound" | "layer_unions"
    optimum: int
    witness: ResidueSet
    explored: int
    elapsed: float


def _minimal_unique(masks: list[int]) -> list[int]:
    """Drop duplicate masks and masks that contain another mask."""
    kept: list[int] = []
    kept_set: set[int] = set()
    for m in sorted(set(masks), key=lambda c: (c.bit_count(), c)):
        if m.bit_count() <= 12:
            dominated = False
            sub = (m - 1) & m
            while sub:
                if sub in kept_set:
                    dominated = True
                    break
                sub = (sub - 1) & m
        else:
            dominated = any(c & ~m == 0 for c in kept)
        if not dominated:
            kept.append(m)
            kept_set.add(m)
    return kept


def cube_constraint_masks(ctx: GroupContext, d: int, budget: int | None = None) -> list[int]:
    """All distinct minimal d-cube masks in Z_{2^n}.

    Raises CapacityError when the generator-multiset space exceeds the budget.
    """
    if d < 1:
        raise ValueError(f"cube dimension must be positive, got {d}")
    budget = DEFAULT_ENUM_BUDGET if budget is None else budget
    size = ctx.modulus
    space = math.comb(size + d - 1, d)
    if space > budget:
        raise CapacityError(
            f"{space} generator multisets exceed the budget of {budget}",
            space_size=space,
        )
    seen: set[int] = set()
    for combo in combinations_with_replacement(range(size), d):
        seen.add(cube_mask(combo, ctx))
    return _minimal_unique(list(seen))


def degenerate_3cube_masks(ctx: GroupContext) -> list[int]:
    """Masks of the restricted 3-cube families {x,x,x} and {x,3x,y}."""
    size = ctx.modulus
    masks = []
    for x in range(size):
        masks.append(cube_mask((x, x, x), ctx))
    for x in range(size):
        for y in range(size):
            masks.append(cube_mask((x, 3 * x % size, y), ctx))
    return _minimal_unique(masks)


def _pattern_masks(ctx: GroupContext, d: int, patterns: str, budget: int | None) -> list[int]:
    if patterns == "all":
        return cube_constraint_masks(ctx, d, budget)
    if patterns == "degenerate":
        if d != 3:
            raise ValueError("the degenerate pattern family is defined for d = 3")
        return degenerate_3cube_masks(ctx)
    raise ValueError(f"unknown pattern family {patterns!r}")


def _exhaustive_max(size: int, masks: list[int], budget: int) -> tuple[int, int, int]:
    if (1 << size) > budget:
        raise CapacityError(
            f"{1 << size} subsets exceed the budget of {budget}", space_size=1 << size
        )
    ordered = sorted(masks, key=lambda c: c.bit_count())
    best_val = -1
    best_mask = 0
    for mask in range(1 << size):
        if mask.bit_count() <= best_val:
            continue
        if all(c & ~mask for c in ordered):
            best_val = mask.bit_count()
            best_mask = mask
    return best_val, best_mask, 1 << size


def _bnb_max(
    size: int,
    masks: list[int],
    start_val: int,
    start_mask: int,
    forced_in: int,
    node_budget: int,
) -> tuple[int, int, int]:
    """Branch-and-bound maximization of |A| subject to containing no mask.

    (start_val, start_mask) must be feasible; forced_in elements may never
    be excluded (callers establish that this loses no optimum).
    """
    full = (1 << size) - 1
    state = {"best_val": start_val, "best_mask": start_mask, "nodes": 0}
    ordered = sorted(masks, key=lambda c: (c.bit_count(), c))

    def rec(excluded: int, exc_count: int, forbidden: int, alive: list[int]) -> None:
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            raise CapacityError(
                f"branch-and-bound exceeded the node budget of {node_budget}"
            )
        if not alive:
            val = size - exc_count
            if val > state["best_val"]:
                state["best_val"] = val
                state["best_mask"] = full & ~excluded
            return
        limit = size - state["best_val"] - 1
        packing = 0
        used = 0
        branch = None
        branch_pc = size + 1
        for c in alive:
            cf = c & ~forbidden
            if cf == 0:
                return  # some cube can no longer be broken
            if cf & used == 0:
                packing += 1
                used |= cf
            pc = cf.bit_count()
            if pc < branch_pc:
                branch_pc = pc
                branch = cf
        if exc_count + packing > limit:
            return
        forb = forbidden
        rest = branch
        while rest:
            low = rest & -rest
            rest ^= low
            alive2 = [c for c in alive if not c & low]
            rec(excluded | low, exc_count + 1, forb, alive2)
            forb |= low
    rec(0, 0, forced_in, ordered)
    return state["best_val"], state["best_mask"], state["nodes"]


def max_cube_free_exact(
    ctx: GroupContext,
    d: int,
    mode: str = "branch_and_bound",
    symmetry: bool = False,
    enum_budget: int | None = None,
    node_budget: int | None = None,
    subset_budget: int | None = None,
) -> SearchCertificate:
    """Maximum cardinality of a d-cube-free subset of Z_{2^n}, with a maximizer.

    ``symmetry=True`` fixes 1 as a member (the odd-unit action maps any set
    with an odd element onto one containing 1, and sets without odd elements
    never beat the layered incumbent); it only engages when the incumbent
    already covers the odd layer.
    """
    if d < 1:
        raise ValueError(f"cube dimension must be positive, got {d}")
    start = time.perf_counter()
    size = ctx.modulus
    if d == 1:
        # any single element is a 1-cube, so only the empty set qualifies
        return SearchCertificate("exhaustive", 0, ResidueSet.empty(ctx), 0,
                                 time.perf_counter() - start)
    masks = cube_constraint_masks(ctx, d, enum_budget)
    if mode == "exhaustive":
        budget = DEFAULT_SUBSET_BUDGET if subset_budget is None else subset_budget
        val, mask, explored = _exhaustive_max(size, masks, budget)
    elif mode == "branch_and_bound":
        seed_val, seed_mask = 0, 0
        top_needed = construction_layers(d)
        if top_needed and top_needed[-1] <= ctx.n:
            seed = layered_construction(d, ctx)
            if all(c & ~seed.mask for c in masks):
                seed_val, seed_mask = len(seed), seed.mask
        forced = 0
        if symmetry and seed_val >= (1 << (ctx.n - 1)):
            forced = 1 << 1  # residue 1 stays in
        budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
        val, mask, explored = _bnb_max(size, masks, seed_val, seed_mask, forced, budget)
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    witness = ResidueSet(ctx, mask)
    if len(witness) != val or not is_cube_free(witness, d):
        raise AssertionError("search produced an invalid witness")
    return SearchCertificate(mode, val, witness, explored, time.perf_counter() - start)


_union_tables: dict[int, list[tuple[int, int, tuple[int, ...]]]] = {}


def _layer_union_table(ctx: GroupContext) -> list[tuple[int, int, tuple[int, ...]]]:
    """(union mask, size, layer indices) for every layer union, sorted by
    decreasing size; cached per group exponent."""
    n = ctx.n
    cached = _union_tables.get(n)
    if cached is not None:
        return cached
    layer_bits = [_layer_mask(n, i) for i in range(1, n + 2)]
    entries = []
    for subset in range(1 << (n + 1)):
        umask = 0
        indices = []
        for i in range(n + 1):
            if subset >> i & 1:
                umask |= layer_bits[i]
                indices.append(i + 1)
        entries.append((umask, umask.bit_count(), tuple(indices)))
    entries.sort(key=lambda e: (-e[1], e[0]))
    _union_tables[n] = entries
    return entries


def union_max_dimension(layer_indices: tuple[int, ...], ctx: GroupContext, cap: int) -> int:
    """Capped max cube dimension of a union of layers, given by indices.

    A union whose top layer is L_t looks the same in every group with
    n >= t: reduction modulo 2^m maps layers onto layers and cubes onto
    cubes, and lifting generators back also preserves the layer membership
    of every subset sum.  The analysis therefore runs in the smallest group
    containing the union, which keeps deep exhaustions cheap and lets all
    group sizes share one memo.
    """
    if not layer_indices:
        return 0
    if ctx.n + 1 in layer_indices:
        return cap  # 0 belongs to the union, which contains every cube dimension
    top = max(layer_indices)
    eff = GroupContext(top) if top < ctx.n else ctx
    union = ResidueSet.empty(eff)
    for i in layer_indices:
        union = union | ResidueSet(eff, _layer_mask(eff.n, i))
    return max_cube_dimension(union, cap, scale_invariant=True)


def max_cube_free_layer_unions(ctx: GroupContext, d: int) -> SearchCertificate:
    """Largest d-cube-free union of layers (all 2^(n+1) unions enumerated).

    Unions are tested in decreasing size order, so the first cube-free one
    attains the optimum; the detection engine's shared memo makes repeated
    sweeps cheap.
    """
    if not 1 <= d <= ctx.n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={ctx.n}")
    start = time.perf_counter()
    table = _layer_union_table(ctx)
    examined = 0
    for umask, size, indices in table:
        examined += 1
        if union_max_dimension(indices, ctx, d) < d:
            return SearchCertificate(
                "layer_unions", size, ResidueSet(ctx, umask), examined,
                time.perf_counter() - start,
            )
    raise AssertionError("the empty union is always cube-free")  # pragma: no cover


@lru_cache(maxsize=None)
def _odd_scaling_maps(n: int) -> tuple[tuple[int, ...], ...]:
    size = 1 << n
    return tuple(
        tuple(lam * x % size for x in range(size)) for lam in range(1, size, 2)
    )


def _is_scaling_canonical(mask: int, maps: tuple[tuple[int, ...], ...]) -> bool:
    members = list(mask_members(mask))
    for perm in maps:
        scaled = 0
        for x in members:
            scaled |= 1 << perm[x]
        if scaled < mask:
            return False
    return True


def min_schur_exhaustive(
    ctx: GroupContext,
    m: int,
    symmetry: bool = False,
    combo_budget: int | None = None,
) -> SearchCertificate:
    """Minimum Schur-triple count over all subsets of size m, with a minimizer.

    ``symmetry=True`` restricts the sweep to odd-scaling orbit
    representatives (the triple count is scaling-invariant).
    """
    size = ctx.modulus
    if not 0 <= m <= size:
        raise ValueError(f"cardinality {m} outside [0, {size}]")
    budget = DEFAULT_COMBO_BUDGET if combo_budget is None else combo_budget
    space = math.comb(size, m)
    if space > budget:
        raise CapacityError(
            f"{space} subsets of size {m} exceed the budget of {budget}",
            space_size=space,
        )
    start = time.perf_counter()
    maps = _odd_scaling_maps(ctx.n) if symmetry else None
    best = None
    best_mask = 0
    explored = 0
    for combo in combinations(range(size), m):
        mask = 0
        for x in combo:
            mask |= 1 << x
        if maps is not None and not _is_scaling_canonical(mask, maps):
            continue
        explored += 1
        st = count_schur_triples(ResidueSet(ctx, mask))
        if best is None or st < best:
            best = st
            best_mask = mask
            if best == 0:
                break
    if best is None:  # m == 0 handled by the loop's single empty combination
        best, best_mask = 0, 0
    witness = ResidueSet(ctx, best_mask)
    if count_schur_triples(witness) != best:
        raise AssertionError("minimizer failed re-verification")
    return SearchCertificate("exhaustive", best, witness, explored,
                             time.perf_counter() - start)


def _wrap_terms(terms: list[str], per_line: int = 12) -> list[str]:
    return [" + ".join(terms[i:i + per_line]) for i in range(0, len(terms), per_line)]


def export_lp(ctx: GroupContext, d: int, patterns: str = "all",
              budget: int | None = None) -> str:
    """Textual LP model: maximize the selected residues subject to one
    covering constraint per cube (at least one member excluded)."""
    masks = _pattern_masks(ctx, d, patterns, budget)
    size = ctx.modulus
    lines = [
        f"\\ cube-free set model: n={ctx.n} d={d} patterns={patterns} "
        f"constraints={len(masks)}",
        "Maximize",
    ]
    obj_lines = _wrap_terms([f"x{v}" for v in range(size)])
    lines.append(" obj: " + obj_lines[0])
    for extra in obj_lines[1:]:
        lines.append("      + " + extra)
    lines.append("Subject To")
    for idx, c in enumerate(masks):
        members = list(mask_members(c))
        row = " + ".join(f"x{v}" for v in members)
        lines.append(f" cube{idx}: {row} <= {len(members) - 1}")
    lines.append("Binary")
    for v in range(size):
        lines.append(f" x{v}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def export_cnf(ctx: GroupContext, d: int, target: int, patterns: str = "all",
               budget: int | None = None) -> str:
    """DIMACS model: cube clauses plus |A| >= target via a sequential counter.

    Variable v+1 selects residue v; auxiliary counter variables follow the
    residue variables.
    """
    masks = _pattern_masks(ctx, d, patterns, budget)
    size = ctx.modulus
    clauses: list[list[int]] = []
    for c in masks:
        clauses.append([-(v + 1) for v in mask_members(c)])
    kk = size - target  # allowed exclusions
    num_vars = size
    if target > size:
        clauses.append([])  # no assignment can reach the target
    elif kk == 0:
        for v in range(size):
            clauses.append([v + 1])
    elif target > 0:
        # sequential counter over y_i = (not x_i): sum y_i <= kk
        def s(i: int, j: int) -> int:
            return size + (i - 1) * kk + j

        num_vars = size + size * kk
        clauses.append([1, s(1, 1)])
        for j in range(2, kk + 1):
            clauses.append([-s(1, j)])
        for i in range(2, size + 1):
            clauses.append([i, s(i, 1)])
            clauses.append([-s(i - 1, 1), s(i, 1)])
            for j in range(2, kk + 1):
                clauses.append([i, -s(i - 1, j - 1), s(i, j)])
                clauses.append([-s(i - 1, j), s(i, j)])
            clauses.append([i, -s(i - 1, kk)])
    header = [
        f"c cube-free decision model n={ctx.n} d={d} target={target} patterns={patterns}",
        f"c residue v <-> variable v+1 (1..{size}); counter variables follow",
        f"p cnf {num_vars} {len(clauses)}",
    ]
    body = [" ".join(str(lit) for lit in clause) + " 0" for clause in clauses]
    return "\n".join(header + body) + "\n"


def parse_assignment(text: str) -> dict[int, float]:
    """Parse whitespace-separated variable-value lines ('x12 1' or '12 1')."""
    out: dict[int, float] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("\\"):
            continue
        parts = line.split()
        if len(parts) != 2:
            continue
        name, value = parts
        if name.startswith("x"):
            name = name[1:]
        try:
            out[int(name)] = float(value)
        except ValueError:
            continue
    return out


def validate_assignment(ctx: GroupContext, d: int, assignment: dict[int, float] | str,
                        patterns: str = "all") -> dict:
    """Re-check a solver assignment against the real predicate.

    Returns feasibility (cube-freeness of the selected set under the chosen
    pattern family) and the objective value |A|.
    """
    if isinstance(assignment, str):
        assignment = parse_assignment(assignment)
    selected = [v for v, val in assignment.items()
                if 0 <= v < ctx.modulus and val > 0.5]
    A = ResidueSet.from_members(ctx, selected)
    if patterns == "all":
        feasible = is_cube_free(A, d)
    elif patterns == "degenerate":
        if d != 3:
            raise ValueError("the degenerate pattern family is defined for d = 3")
        feasible = find_degenerate_3cube(A) is None
    else:
        raise ValueError(f"unknown pattern family {patterns!r}")
    return {"feasible": feasible, "objective": len(A), "selected": A.members()}
