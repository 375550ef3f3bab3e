"""Orbit counts: closed-form fixed-point formulas, the averaged orbit bound,
and independent brute-force oracles (global census, root-count sweeps,
class-equation checks).

The closed forms are pure integer formulas valid for prime n > 3. Every one
of them is paired with an oracle that recomputes the same quantity from the
group action itself, with no shared formulas: the census and the fixed-point
oracle enumerate orbits element by element over a visited bit array, the
root-count oracles either solve GF(2)-linear systems or walk the whole
multiplicative group. Oracles are feasible through n = 5 (a 2^30-bit array);
larger n is refused with a cost estimate rather than attempted.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import mobius
from .gf2tower import (
    LinearizedMap,
    Tower,
    _ColumnSolver,
    frobenius_linearized,
    identity_linearized,
    linearized_sum,
    solve_affine_linearized,
)

__all__ = [
    "InfeasibleError",
    "ConsistencyError",
    "euler_phi",
    "is_prime",
    "closed_form_fixed_points",
    "fixed_points_for_power",
    "burnside_numerator",
    "burnside_decomposition",
    "burnside_bound",
    "SweepResult",
    "OrbitCensus",
    "global_orbit_census",
    "fixed_point_oracle",
    "fixed_orbit_representatives",
    "FixedPointTable",
    "fixed_point_table",
    "ROOT_EQUATIONS",
    "RootCounts",
    "root_count_oracle",
    "class_equation_check",
    "solve_artin_schreier_shift",
    "primitive_element",
    "MAX_SWEEP_N",
]

MAX_SWEEP_N = 5

ROOT_EQUATIONS = ("eq_3n", "eq_2n_affine", "eq_41", "eq_deg8", "fixed_field_64")


class InfeasibleError(Exception):
    """A computation was refused because it exceeds the desk-scale budget."""


class ConsistencyError(Exception):
    """Two routes to the same quantity disagreed; must never happen."""


# ------------------------------------------------------------- closed forms


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    f = 2
    while f * f <= k:
        if k % f == 0:
            return False
        f += 1
    return True


def euler_phi(k: int) -> int:
    out = k
    f = 2
    while f * f <= k:
        if k % f == 0:
            out -= out // f
            while k % f == 0:
                k //= f
        f += 1
    if k > 1:
        out -= out // k
    return out


def _require_odd_prime(n: int) -> None:
    if n <= 3 or not is_prime(n):
        raise ValueError("closed forms require a prime n greater than 3")


def closed_form_fixed_points(n: int, order: int) -> int:
    """Count of linear-group orbits fixed by a Galois element of the given order."""
    _require_odd_prime(n)
    table = {
        1: (1 << 3 * n) + (1 << n) - 1,
        2: (1 << 2 * n) - 1,
        3: (1 << n) - 2,
        6: 0,
        n: 9,
        2 * n: 3,
        3 * n: 0,
        6 * n: 0,
    }
    if order not in table:
        raise ValueError(f"order {order} does not divide 6n = {6 * n}")
    return table[order]


def fixed_points_for_power(n: int, i: int) -> int:
    """Closed form for the i-th Frobenius power; depends only on gcd(i, 6n)."""
    _require_odd_prime(n)
    d = math.gcd(i, 6 * n)
    return closed_form_fixed_points(n, 6 * n // d)


def burnside_numerator(n: int) -> int:
    return (1 << 3 * n) + (1 << 2 * n) + 3 * (1 << n) + 12 * n - 18


def burnside_decomposition(n: int) -> list[dict]:
    """Per-divisor terms of the averaged fixed-point sum."""
    _require_odd_prime(n)
    rows = []
    for d in sorted(k for k in range(1, 6 * n + 1) if (6 * n) % k == 0):
        order = 6 * n // d
        fixed = closed_form_fixed_points(n, order)
        phi = euler_phi(6 * n // d)
        rows.append({
            "divisor": d,
            "order": order,
            "fixed_points": fixed,
            "phi": phi,
            "term": fixed * phi,
        })
    return rows


def burnside_bound(n: int) -> int:
    """Upper bound on inequivalent extended codes: the averaged fixed-point count.

    Evaluates both the explicit phi-weighted divisor sum and the closed-form
    numerator, requiring exact agreement and exact divisibility by 6n.
    """
    _require_odd_prime(n)
    numerator = burnside_numerator(n)
    phi_sum = sum(row["term"] for row in burnside_decomposition(n))
    if phi_sum != numerator:
        raise ConsistencyError(
            f"divisor sum {phi_sum} differs from closed form {numerator} at n={n}")
    if numerator % (6 * n):
        raise ConsistencyError(f"closed form not divisible by 6n at n={n}")
    return numerator // (6 * n)


# ------------------------------------------------------------ visited-bit ops


_WORD_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


def _mark_bits(words: np.ndarray, idx: np.ndarray) -> None:
    """Set bits idx in the packed array; converges under in-word collisions."""
    w = idx >> 6
    b = np.uint64(1) << (idx & np.int64(63)).astype(np.uint64)
    while True:
        words[w] |= b
        miss = (words[w] & b) == 0
        if not miss.any():
            return
        w = w[miss]
        b = b[miss]


def _test_bit(words: np.ndarray, x: int) -> bool:
    return bool((int(words[x >> 6]) >> (x & 63)) & 1)


def _next_unvisited(words: np.ndarray, start_word: int) -> tuple[int, int | None]:
    """First zero bit at or after start_word; returns (word_cursor, index or None)."""
    w = start_word
    total = words.size
    chunk_words = 1 << 14
    while w < total:
        chunk = words[w:w + chunk_words]
        nz = np.flatnonzero(chunk != _WORD_FULL)
        if nz.size:
            wi = w + int(nz[0])
            word = int(words[wi])
            inv = ~word & 0xFFFFFFFFFFFFFFFF
            bit = (inv & -inv).bit_length() - 1
            return wi, (wi << 6) | bit
        w += chunk_words
    return total, None


def _sweep_memory_check(n: int) -> None:
    if n > MAX_SWEEP_N:
        gib = (1 << (6 * n - 3)) / (1 << 30)
        raise InfeasibleError(
            f"n={n} needs a 2^{6 * n}-bit visited array ({gib:.0f} GiB); "
            f"sweeps are limited to n <= {MAX_SWEEP_N}")


# ------------------------------------------------------------------ the sweep


@dataclass(frozen=True)
class SweepRecord:
    """One semi-linear orbit: least element, linear-orbit count, fixed-power mask."""

    rep: int
    pgl_orbits: int
    fixed_mask: int  # bit p set iff the Frobenius power p fixes each member orbit


@dataclass(frozen=True)
class SweepResult:
    n: int
    records: tuple[SweepRecord, ...]
    pgl_orbit_size: int
    pgl_orbit_count: int
    elements_visited: int
    workers: int
    elapsed_ms: float


_SWEEP_CACHE: dict[tuple[int, int, int], SweepResult] = {}


def _run_sweep(ctx: Tower, workers: int = 1) -> SweepResult:
    """Enumerate every semi-linear orbit on the degree-6 set.

    Walks encodings in ascending order over a 2^(6n)-bit visited array.
    Each claimed element is the least of its orbit; its linear orbit is
    expanded once through the affine-suborbit decomposition and the other
    member orbits are its Frobenius images, deduplicated by the first
    power t with sigma^t(alpha) back in the base orbit. Fixed-power flags
    come from direct membership tests, and are cross-checked against the
    cyclic structure (power p fixes the orbit iff t divides p).

    The result is deterministic and identical for any worker count: claims
    are sequential; workers only parallelize the per-conjugate image
    computation.
    """
    n, m = ctx.n, ctx.big_degree
    _sweep_memory_check(n)
    start = time.perf_counter()
    words = np.zeros(1 << (m - 6), dtype=np.uint64)
    for bits in (2 * n, 3 * n):
        _mark_bits(words, ctx.subfield_span_array(bits))
    non_s = int(np.bitwise_count(words).sum())
    orbit_size = (1 << 3 * n) - (1 << n)

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    records: list[SweepRecord] = []
    try:
        cursor = 0
        while True:
            cursor, alpha = _next_unvisited(words, cursor)
            if alpha is None:
                break
            base = mobius.pgl_orbit_array(ctx, alpha)
            base_sorted = np.sort(base)
            if int(base_sorted[0]) != alpha:
                raise ConsistencyError("claimed element is not its orbit minimum")
            conj = np.array([ctx.frobenius(alpha, p) for p in range(1, m)],
                            dtype=np.int64)
            pos = np.searchsorted(base_sorted, conj)
            inside = (pos < base_sorted.size) & (base_sorted[
                np.minimum(pos, base_sorted.size - 1)] == conj)
            fixed_mask = 0
            for p in range(1, m):
                if inside[p - 1]:
                    fixed_mask |= 1 << p
            t = m
            for p in range(1, m):
                if (fixed_mask >> p) & 1:
                    t = p
                    break
            expected = sum(1 << p for p in range(1, m) if p % t == 0)
            if fixed_mask != expected:
                raise ConsistencyError(
                    "membership flags break the cyclic orbit structure")

            if pool is not None and t > 1:
                futures = [
                    pool.submit(lambda i=i: np.sort(ctx.frobenius_vec(base, i)))
                    for i in range(1, t)
                ]
                _mark_bits(words, base_sorted)
                for fut in futures:
                    _mark_bits(words, fut.result())
            else:
                _mark_bits(words, base_sorted)
                for i in range(1, t):
                    _mark_bits(words, np.sort(ctx.frobenius_vec(base, i)))
            records.append(SweepRecord(rep=alpha, pgl_orbits=t,
                                       fixed_mask=fixed_mask))
    finally:
        if pool is not None:
            pool.shutdown()

    visited = int(np.bitwise_count(words).sum())
    if visited != 1 << m:
        raise ConsistencyError("sweep terminated with unvisited elements")
    s_size = (1 << m) - non_s
    total = sum(r.pgl_orbits for r in records) * orbit_size
    if total != s_size:
        raise ConsistencyError(
            f"orbit sizes sum to {total}, expected |S| = {s_size}")
    result = SweepResult(
        n=n,
        records=tuple(records),
        pgl_orbit_size=orbit_size,
        pgl_orbit_count=sum(r.pgl_orbits for r in records),
        elements_visited=s_size,
        workers=workers,
        elapsed_ms=(time.perf_counter() - start) * 1e3,
    )
    _SWEEP_CACHE[(ctx.n, ctx.modulus_base, ctx.modulus_big)] = result
    return result


def _cached_sweep(ctx: Tower) -> SweepResult:
    key = (ctx.n, ctx.modulus_base, ctx.modulus_big)
    hit = _SWEEP_CACHE.get(key)
    if hit is None:
        hit = _run_sweep(ctx, workers=1)
    return hit


# ---------------------------------------------------------------- the census


@dataclass(frozen=True)
class OrbitCensus:
    """Census of semi-linear orbits on the degree-6 set."""

    n: int
    orbit_count: int
    orbit_sizes: tuple[tuple[int, int], ...]  # (size, multiplicity), ascending
    elements_visited: int
    pgl_orbit_count: int
    records: tuple[tuple[int, int, int], ...]  # (rep, pgl_orbits, size)
    workers: int
    elapsed_ms: float


def global_orbit_census(ctx: Tower, workers: int = 1) -> OrbitCensus:
    """Run a full sweep and tabulate the semi-linear orbits.

    Always recomputes (the determinism contract across worker counts is a
    statement about fresh runs); the result also refreshes the shared sweep
    cache used by the fixed-point oracle.
    """
    if workers < 1:
        raise ValueError("workers must be positive")
    sweep = _run_sweep(ctx, workers=workers)
    size = sweep.pgl_orbit_size
    records = tuple(
        (r.rep, r.pgl_orbits, r.pgl_orbits * size) for r in sweep.records)
    hist = Counter(r[2] for r in records)
    return OrbitCensus(
        n=sweep.n,
        orbit_count=len(records),
        orbit_sizes=tuple(sorted(hist.items())),
        elements_visited=sweep.elements_visited,
        pgl_orbit_count=sweep.pgl_orbit_count,
        records=records,
        workers=workers,
        elapsed_ms=sweep.elapsed_ms,
    )


def fixed_point_oracle(n: int, d: int, ctx: Tower) -> int:
    """Count linear-group orbits fixed by the d-th Frobenius power, by sweep.

    Exhaustive and formula-free: orbit membership of sigma^d(rep) is tested
    against the enumerated orbit, once per orbit class, and every member
    orbit of a class shares the class flags by conjugation.
    """
    if ctx.n != n:
        raise ValueError("context does not match n")
    _sweep_memory_check(n)
    sweep = _cached_sweep(ctx)
    d_red = d % (6 * n)
    if d_red == 0:
        return sweep.pgl_orbit_count
    return sum(r.pgl_orbits for r in sweep.records
               if (r.fixed_mask >> d_red) & 1)


def fixed_orbit_representatives(ctx: Tower, d: int,
                                limit: int | None = None) -> list[int]:
    """Least members of orbit classes fixed setwise by the d-th Frobenius power."""
    sweep = _cached_sweep(ctx)
    d_red = d % (6 * ctx.n)
    if d_red == 0:
        reps = [r.rep for r in sweep.records]
    else:
        reps = [r.rep for r in sweep.records if (r.fixed_mask >> d_red) & 1]
    return reps[:limit] if limit is not None else reps


@dataclass(frozen=True)
class FixedPointTable:
    """Closed forms and oracle counts per divisor of 6n."""

    n: int
    entries: tuple[dict, ...]

    def all_match(self) -> bool:
        return all(
            e["closed_form"] is None or e["oracle"] is None
            or e["closed_form"] == e["oracle"]
            for e in self.entries)


def fixed_point_table(n: int, ctx: Tower | None = None) -> FixedPointTable:
    entries = []
    closed_ok = n > 3 and is_prime(n)
    for d in sorted(k for k in range(1, 6 * n + 1) if (6 * n) % k == 0):
        order = 6 * n // d
        closed = closed_form_fixed_points(n, order) if closed_ok else None
        oracle = None
        if ctx is not None and n <= MAX_SWEEP_N:
            oracle = fixed_point_oracle(n, d, ctx)
        entries.append({
            "divisor": d,
            "order": order,
            "closed_form": closed,
            "oracle": oracle,
        })
    return FixedPointTable(n=n, entries=tuple(entries))


# ----------------------------------------------------------- root-count sweeps


@dataclass(frozen=True)
class RootCounts:
    """Root tallies of one equation, split by where the roots live."""

    equation: str
    total: int
    in_degree_six: int
    in_subfield_2n: int
    in_subfield_3n: int


def _classify_roots(ctx: Tower, which: str, sols: np.ndarray) -> RootCounts:
    if sols.size == 0:
        return RootCounts(which, 0, 0, 0, 0)
    n = ctx.n
    in2 = ctx.frobenius_vec(sols, 2 * n) == sols
    in3 = ctx.frobenius_vec(sols, 3 * n) == sols
    return RootCounts(
        equation=which,
        total=int(sols.size),
        in_degree_six=int((~in2 & ~in3).sum()),
        in_subfield_2n=int(in2.sum()),
        in_subfield_3n=int(in3.sum()),
    )


def _affine_equation_map(ctx: Tower, which: str) -> tuple[LinearizedMap, int]:
    n, m = ctx.n, ctx.big_degree
    ident = identity_linearized(m)
    if which == "eq_3n":
        return linearized_sum(frobenius_linearized(ctx, 3 * n), ident), 1
    if which == "eq_2n_affine":
        return linearized_sum(frobenius_linearized(ctx, 2 * n), ident), 1
    if which == "eq_deg8":
        return linearized_sum(frobenius_linearized(ctx, 3), ident), 1
    if which == "fixed_field_64":
        return linearized_sum(frobenius_linearized(ctx, 6), ident), 0
    raise ValueError(f"unknown equation {which!r}")


def root_count_oracle(ctx: Tower, which: str) -> RootCounts:
    """Count roots of one of the named equations, splitting by subfield.

    The affine-linearized equations are solved exactly by GF(2) linear
    algebra at any feasible n; the multiplicative equation walks every
    nonzero field element (n <= 5).
    """
    if which not in ROOT_EQUATIONS:
        raise ValueError(f"unknown equation {which!r}; choose from {ROOT_EQUATIONS}")
    if which == "eq_41":
        _sweep_memory_check(ctx.n)
        return _eq41_walk(ctx)
    lmap, rhs = _affine_equation_map(ctx, which)
    kernel_dim = len(_ColumnSolver(list(lmap.cols)).kernel_basis)
    if kernel_dim > 22:
        raise InfeasibleError(
            f"solution space 2^{kernel_dim} too large to enumerate")
    sols = solve_affine_linearized(lmap, rhs)
    return _classify_roots(ctx, which, sols)


def primitive_element(ctx: Tower) -> int:
    """Deterministic generator of the multiplicative group (least encoding)."""
    key = ("primitive",)
    hit = ctx._np_tables.get(key)
    if hit is not None:
        return int(hit[0][0])
    q1 = ctx.order - 1
    primes = []
    k, f = q1, 2
    while f * f <= k:
        if k % f == 0:
            primes.append(f)
            while k % f == 0:
                k //= f
        f += 1
    if k > 1:
        primes.append(k)
    g = 2
    while True:
        if all(ctx.pow(g, q1 // p) != 1 for p in primes):
            ctx._np_tables[key] = [np.array([g], dtype=np.int64)]
            return g
        g += 1


def _eq41_walk(ctx: Tower) -> RootCounts:
    """Exhaustive root count for x^(2^(2n)+1) + x + 1 over the nonzero field.

    Walks x = g^k over the whole multiplicative group in vectorized lanes.
    Both x and p = x^(2^(2n)+1) advance by fixed multipliers, so the
    equation test p == x + 1 needs no per-element multiplication; subfield
    membership of x is read off the exponent k modulo the subgroup indexes.
    """
    n, m = ctx.n, ctx.big_degree
    group = ctx.order - 1
    g = primitive_element(ctx)
    exp = (1 << 2 * n) + 1
    g_tabs = ctx.mult_tables(g)
    gn_tabs = ctx.mult_tables(ctx.pow(g, exp))
    idx2 = group // ((1 << 2 * n) - 1)
    idx3 = group // ((1 << 3 * n) - 1)

    lanes = min(1 << 17, group)
    iters = -(-group // lanes)
    g_step = ctx.pow(g, iters)
    gn_step = ctx.pow(g_step, exp)
    x = np.empty(lanes, dtype=np.int64)
    p = np.empty(lanes, dtype=np.int64)
    xv, pv = 1, 1
    for w in range(lanes):
        x[w] = xv
        p[w] = pv
        xv = ctx.mul(xv, g_step)
        pv = ctx.mul(pv, gn_step)
    bases = np.arange(lanes, dtype=np.int64) * iters
    r2 = bases % idx2
    r3 = bases % idx3
    limit = group - bases

    total = in2 = in3 = both = 0
    one = np.int64(1)
    for step in range(iters):
        hits = np.flatnonzero((p == (x ^ one)) & (limit > step))
        if hits.size:
            h2 = r2[hits] == 0
            h3 = r3[hits] == 0
            total += int(hits.size)
            in2 += int(h2.sum())
            in3 += int(h3.sum())
            both += int((h2 & h3).sum())
        if step + 1 < iters:
            x = ctx.apply_tables(g_tabs, x)
            p = ctx.apply_tables(gn_tabs, p)
            r2 += 1
            r2[r2 == idx2] = 0
            r3 += 1
            r3[r3 == idx3] = 0
    return RootCounts(
        equation="eq_41",
        total=total,
        in_degree_six=total - in2 - in3 + both,
        in_subfield_2n=in2,
        in_subfield_3n=in3,
    )


# ------------------------------------------------------- class-equation checks


def class_equation_check(ctx: Tower, alpha: int, d: int) -> tuple[int, ...]:
    """Cycle-type of the d-th Frobenius power acting on the affine suborbits.

    Requires the power to fix the orbit of alpha as a set. The returned
    parts sum to 2^n + 1 and each divides the order of the acting element.
    """
    if not ctx.is_degree_six(alpha):
        raise ValueError("alpha must have degree 6 over the base field")
    base_sorted = np.sort(mobius.pgl_orbit_array(ctx, alpha))
    image = ctx.frobenius(alpha, d)
    pos = int(np.searchsorted(base_sorted, image))
    if pos >= base_sorted.size or int(base_sorted[pos]) != image:
        raise ValueError("the Galois power does not fix the orbit of alpha")

    reps = mobius.suborbit_representatives(ctx, alpha)
    owner: dict[int, int] = {}
    for k, rep in enumerate(reps):
        for y in mobius.affine_suborbit(ctx, rep):
            owner[y] = k
    perm = [owner[ctx.frobenius(rep, d)] for rep in reps]

    order = (6 * ctx.n) // math.gcd(6 * ctx.n, d)
    parts = []
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        parts.append(length)
    parts.sort()
    if sum(parts) != (1 << ctx.n) + 1:
        raise ConsistencyError("suborbit cycle type does not cover the partition")
    if any(order % part for part in parts):
        raise ConsistencyError("cycle length does not divide the element order")
    return tuple(parts)


# -------------------------------------------------------------- shift solving


def solve_artin_schreier_shift(ctx: Tower, b: int) -> int | None:
    """Base-field c with c^(2^6) + c = b, or None when no solution exists.

    Solvable exactly when the absolute trace of b over the base field
    vanishes; solved by GF(2) elimination restricted to the base subfield.
    """
    if ctx.frobenius(b, ctx.n) != b:
        raise ValueError("b must lie in the embedded base field")
    basis = list(ctx._subfield_basis)
    images = [ctx.frobenius(k, 6) ^ k for k in basis]
    combo = _ColumnSolver(images).solve(b)
    if combo is None:
        return None
    c = 0
    for i, k in enumerate(basis):
        if (combo >> i) & 1:
            c ^= k
    if ctx.frobenius(c, 6) ^ c != b:
        raise ConsistencyError("shift solution failed verification")
    return c
