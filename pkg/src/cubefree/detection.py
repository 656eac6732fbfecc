"""Exact projective-cube detection inside subsets of Z_{2^n}.

The decision engine rests on one identity.  If the generators chosen so
far have cube P inside A, then a further multiset Y completes a cube iff
all of Sigma*Y lies in

    D = A & (A - p_1) & (A - p_2) & ...   over the elements p_i of P,

so the problem restarts on the shrunken set D and the largest cube
dimension satisfies

    maxdim(D) = max over g in D of  1 + maxdim(D & (D - g)).

maxdim is intrinsic to D, which allows a single global memo table plus two
exact reductions: a set of even residues halves into Z_{2^(n-1)}, and odd
scaling is free (Sigma*(lam Y) = lam Sigma*Y), so the smallest odd element
is normalized to 1 before lookup.

Two sound caps bound the recursion when 0 is not in D:

* size cap -- each generator strictly shrinks D (a stalled step would put
  the cyclic subgroup generated by g, hence 0, inside D), so
  maxdim(D) <= |D|;
* zero-sum cap -- if every element of D has 2-adic valuation in
  [j-1, t-1], then among any 2^(t-j+1) generators some nonempty subset sum
  is divisible by 2^t and cannot lie in D, so maxdim(D) <= 2^(t-j+1) - 1.
  (Both facts are exercised independently by the zero-sum oracle module.)

The witness engine explores non-decreasing generator tuples in
lexicographic order and returns the smallest witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import GeneratorMultiset, ResidueSet, _layer_mask, shift_mask
from .sumsets import projective_cube


@dataclass(frozen=True)
class CubeWitness:
    """Generators together with their cube, certified inside a searched set."""

    generators: GeneratorMultiset
    cube: ResidueSet

    @property
    def d(self) -> int:
        return len(self.generators)

    @classmethod
    def build(cls, generators: GeneratorMultiset, within: ResidueSet) -> "CubeWitness":
        cube = projective_cube(generators)
        if not cube.issubset(within):
            raise ValueError(
                f"generators {generators.elements} produce sums outside the searched set"
            )
        return cls(generators, cube)


@lru_cache(maxsize=None)
def _odd_mask(n: int) -> int:
    return _layer_mask(n, 1)


def _normalize(mask: int, n: int) -> tuple[int, int]:
    """Halve all-even sets and scale the smallest odd element to 1.

    Requires a nonzero mask without bit 0.  Both steps preserve maxdim.
    """
    while not mask & _odd_mask(n):
        halved = 0
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            halved |= 1 << ((low.bit_length() - 1) >> 1)
        mask = halved
        n -= 1
    odd_bits = mask & _odd_mask(n)
    o = (odd_bits & -odd_bits).bit_length() - 1
    if o != 1:
        size = 1 << n
        lam = pow(o, -1, size)
        scaled = 0
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            scaled |= 1 << (lam * (low.bit_length() - 1) % size)
        mask = scaled
    return mask, n


_exact: dict[tuple[int, int], int] = {}
_atleast: dict[tuple[int, int], int] = {}


def clear_detection_cache() -> None:
    _exact.clear()
    _atleast.clear()


def _maxdim(mask: int, n: int, cap: int) -> int:
    """min(largest cube dimension inside the set, cap)."""
    if cap <= 0 or mask == 0:
        return 0
    if mask & 1:
        return cap  # {0} is a d-cube for every d
    if cap == 1:
        return 1  # any single element is a 1-cube
    mask, n = _normalize(mask, n)
    size_d = mask.bit_count()
    top = n
    while not mask & _layer_mask(n, top):
        top -= 1
    ub = min(size_d, (1 << top) - 1)
    if cap > ub:
        cap = ub
    if cap <= 1:
        return cap
    key = (n, mask)
    exact = _exact.get(key)
    if exact is not None:
        return exact if exact < cap else cap
    if _atleast.get(key, 0) >= cap:
        return cap
    size = 1 << n
    full = (1 << size) - 1
    best = 1
    seen = {0}
    rest = mask
    while rest:
        low = rest & -rest
        g = low.bit_length() - 1
        rest ^= low
        # D & (D - g): the candidate set after adopting the generator g
        child = mask & (((mask << (size - g)) | (mask >> g)) & full)
        if child in seen:
            continue
        seen.add(child)
        sub = _maxdim(child, n, cap - 1)
        if 1 + sub > best:
            best = 1 + sub
            if best >= cap:
                break
    if best < cap:
        _exact[key] = best
    elif best > _atleast.get(key, 0):
        _atleast[key] = best
    return best


def max_cube_dimension(A: ResidueSet, cap: int, scale_invariant: bool = False) -> int:
    """Largest cube dimension found in A, capped at ``cap``.

    ``scale_invariant=True`` is a caller promise that A is fixed by every
    odd scaling (true for unions of layers); the first generator is then
    canonicalized to one power of two per populated layer.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    mask = A.mask
    n = A.ctx.n
    if not scale_invariant:
        return _maxdim(mask, n, cap)
    if mask == 0 or cap == 0:
        return 0
    if mask & 1:
        return cap
    size = 1 << n
    full = (1 << size) - 1
    best = 0
    for i in range(1, n + 1):
        if not mask & _layer_mask(n, i):
            continue
        g = 1 << (i - 1)
        child = mask & (((mask << (size - g)) | (mask >> g)) & full)
        sub = _maxdim(child, n, cap - 1)
        if 1 + sub > best:
            best = 1 + sub
            if best >= cap:
                break
    return best


def is_cube_free(A: ResidueSet, d: int, scale_invariant: bool = False) -> bool:
    """True iff A contains no projective d-cube."""
    if d < 1:
        raise ValueError(f"cube dimension must be positive, got {d}")
    return max_cube_dimension(A, d, scale_invariant=scale_invariant) < d


def find_cube(A: ResidueSet, d: int) -> CubeWitness | None:
    """Lexicographically smallest d-cube witness inside A, or None.

    Generators are drawn from the current candidate set in ascending order,
    so depth-first search reaches witnesses in lexicographic order; the
    memoized decision engine vets each subtree before it is entered.
    """
    if d < 1:
        raise ValueError(f"cube dimension must be positive, got {d}")
    ctx = A.ctx
    amask = A.mask
    if amask == 0:
        return None
    if amask & 1:
        return CubeWitness.build(GeneratorMultiset.of(ctx, (0,) * d), A)
    n = ctx.n
    size = ctx.modulus
    full = ctx.full_mask
    prefix: list[int] = []

    def rec(D: int, need: int) -> bool:
        if need == 0:
            return True
        cand = D
        if prefix:
            cand &= full ^ ((1 << prefix[-1]) - 1)  # keep the tuple non-decreasing
        rest = cand
        while rest:
            low = rest & -rest
            g = low.bit_length() - 1
            rest ^= low
            c = size - g
            child = D & (((D << c) | (D >> g)) & full)
            if _maxdim(child, n, need - 1) >= need - 1:
                prefix.append(g)
                if rec(child, need - 1):
                    return True
                prefix.pop()
        return False

    if rec(amask, d):
        return CubeWitness.build(GeneratorMultiset.of(ctx, tuple(prefix)), A)
    return None


@lru_cache(maxsize=None)
def _run_masks(n: int, m: int) -> tuple[int, ...]:
    """For each x, the mask of {x, 2x, ..., m*x} modulo 2^n."""
    size = 1 << n
    out = []
    for x in range(size):
        mask = 0
        for i in range(1, m + 1):
            mask |= 1 << (i * x % size)
        out.append(mask)
    return tuple(out)


def find_multiple_run(A: ResidueSet, m: int) -> int | None:
    """Smallest x (0 allowed) with {x, 2x, ..., m*x} inside A, or None."""
    if m < 1:
        raise ValueError(f"run length must be positive, got {m}")
    masks = _run_masks(A.ctx.n, m)
    amask = A.mask
    for x in range(A.ctx.modulus):
        if masks[x] & ~amask == 0:
            return x
    return None


def find_homogeneous_cube(A: ResidueSet, ell: int) -> tuple[int, int] | None:
    """A pair (x, y) whose 2^ell-cube {x,...,(2^ell-1)x} | {y,...,y+(2^ell-1)x} sits in A."""
    if ell < 1:
        raise ValueError(f"ell must be positive, got {ell}")
    ctx = A.ctx
    size = ctx.modulus
    amask = A.mask
    r = (1 << ell) - 1
    runs = _run_masks(ctx.n, r)
    for x in range(size):
        if runs[x] & ~amask:
            continue
        inter = amask
        for i in range(1, r + 1):
            inter &= shift_mask(amask, -(i * x), ctx)
            if not inter:
                break
        if inter:
            y = (inter & -inter).bit_length() - 1
            return x, y
    return None


def find_degenerate_3cube(A: ResidueSet) -> CubeWitness | None:
    """A 3-cube of the restricted shapes {x,x,x} or {x,3x,y} inside A, or None."""
    ctx = A.ctx
    size = ctx.modulus
    amask = A.mask
    runs = _run_masks(ctx.n, 3)
    for x in range(size):
        if runs[x] & ~amask == 0:
            return CubeWitness.build(GeneratorMultiset.of(ctx, (x, x, x)), A)
    for x in range(size):
        base = (1 << x) | (1 << (3 * x % size)) | (1 << (4 * x % size))
        if base & ~amask:
            continue
        inter = amask
        for c in (x, 3 * x, 4 * x):
            inter &= shift_mask(amask, -c, ctx)
            if not inter:
                break
        if inter:
            y = (inter & -inter).bit_length() - 1
            return CubeWitness.build(GeneratorMultiset.of(ctx, (x, 3 * x % size, y)), A)
    return None
