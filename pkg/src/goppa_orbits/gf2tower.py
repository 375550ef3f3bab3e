"""Exact arithmetic in the tower GF(2) < GF(2^n) < GF(2^(6n)).

Field elements are plain ints: bit j of enc(x) is the coefficient of x^j in
the polynomial basis of the field's modulus. 0 and 1 encode the field's zero
and one, and addition is the xor (^) operation. A Tower carries the moduli,
the subfield embedding and the Frobenius machinery; all operations are pure
functions of their inputs and a Tower is immutable after construction
(internal caches are append-only), so it can be shared freely between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2poly

__all__ = [
    "Tower",
    "make_tower",
    "LinearizedMap",
    "identity_linearized",
    "frobenius_linearized",
    "linearized_sum",
    "compose_linearized",
    "solve_affine_linearized",
    "span",
]

_MAX_N = 16  # subfield enumeration builds 2^n elements; keep construction desk-scale


class _ColumnSolver:
    """Solve sum_{j in bits(x)} cols[j] = target over GF(2) by elimination."""

    def __init__(self, cols: list[int]):
        self._pivots: dict[int, tuple[int, int]] = {}  # leading bit -> (col, combo)
        kernel = []
        for j, col in enumerate(cols):
            combo = 1 << j
            while col:
                lead = col.bit_length() - 1
                if lead in self._pivots:
                    pcol, pcombo = self._pivots[lead]
                    col ^= pcol
                    combo ^= pcombo
                else:
                    self._pivots[lead] = (col, combo)
                    break
            if col == 0:
                kernel.append(combo)
        self.kernel_basis: tuple[int, ...] = tuple(kernel)

    def solve(self, target: int) -> int | None:
        """One solution x, or None if target is outside the column span."""
        x = 0
        while target:
            lead = target.bit_length() - 1
            hit = self._pivots.get(lead)
            if hit is None:
                return None
            target ^= hit[0]
            x ^= hit[1]
        return x


def span(basis: tuple[int, ...] | list[int]) -> np.ndarray:
    """All XOR combinations of the basis vectors, as a sorted int64 array."""
    arr = np.zeros(1, dtype=np.int64)
    for b in basis:
        arr = np.concatenate([arr, arr ^ np.int64(b)])
    arr.sort()
    return arr


@dataclass(frozen=True)
class LinearizedMap:
    """GF(2)-affine map on field encodings: x -> M(x) + offset.

    cols[j] is the image of the basis element x^j, so M(x) is the XOR of
    cols[j] over the set bits of x.
    """

    cols: tuple[int, ...]
    offset: int = 0

    def apply_linear(self, x: int) -> int:
        r = 0
        j = 0
        while x:
            if x & 1:
                r ^= self.cols[j]
            x >>= 1
            j += 1
        return r

    def apply(self, x: int) -> int:
        return self.apply_linear(x) ^ self.offset


def identity_linearized(width: int) -> LinearizedMap:
    return LinearizedMap(tuple(1 << j for j in range(width)))


def frobenius_linearized(ctx: Tower, i: int) -> LinearizedMap:
    """The map x -> x^(2^i) as a bit matrix."""
    return LinearizedMap(tuple(ctx._frob_cols(i)))


def linearized_sum(*maps: LinearizedMap) -> LinearizedMap:
    width = len(maps[0].cols)
    cols = [0] * width
    offset = 0
    for m in maps:
        if len(m.cols) != width:
            raise ValueError("mismatched map widths")
        for j in range(width):
            cols[j] ^= m.cols[j]
        offset ^= m.offset
    return LinearizedMap(tuple(cols), offset)


def compose_linearized(f: LinearizedMap, g: LinearizedMap) -> LinearizedMap:
    cols = tuple(f.apply_linear(c) for c in g.cols)
    return LinearizedMap(cols, f.apply_linear(g.offset) ^ f.offset)


def solve_affine_linearized(lmap: LinearizedMap, b: int) -> np.ndarray:
    """All solutions of lmap(x) = b, as a sorted int64 array (possibly empty).

    The solution set is a coset of the kernel, so its size is 0 or
    2^dim(ker).
    """
    solver = _ColumnSolver(list(lmap.cols))
    particular = solver.solve(b ^ lmap.offset)
    if particular is None:
        return np.empty(0, dtype=np.int64)
    sols = span(solver.kernel_basis) ^ np.int64(particular)
    sols.sort()
    return sols


class Tower:
    """The tower GF(2) < GF(2^n) < GF(2^(6n)) with fixed moduli and embedding.

    Default moduli are the deterministic fewest-terms, least-value
    irreducibles of degrees n and 6n. The embedding sends the base field's
    generator (x mod modulus_base) to the enc-least root of modulus_base in
    the big field, so encodings are reproducible across runs.
    """

    def __init__(self, n: int, modulus_base: int | None = None,
                 modulus_big: int | None = None):
        if n < 2:
            raise ValueError("n must be at least 2")
        if n > _MAX_N:
            raise ValueError(
                f"n={n} exceeds the construction cap ({_MAX_N}); "
                "the subfield embedding enumerates 2^n elements")
        self.n = n
        self.big_degree = 6 * n
        m = self.big_degree
        if modulus_base is None:
            modulus_base = gf2poly.lowest_irreducible(n)
        elif gf2poly.degree(modulus_base) != n or not gf2poly.is_irreducible(modulus_base):
            raise ValueError("modulus_base must be irreducible of degree n")
        if modulus_big is None:
            modulus_big = gf2poly.lowest_irreducible(m)
        elif gf2poly.degree(modulus_big) != m or not gf2poly.is_irreducible(modulus_big):
            raise ValueError("modulus_big must be irreducible of degree 6n")
        self.modulus_base = modulus_base
        self.modulus_big = modulus_big
        self.order = 1 << m

        # squaring matrix: column j is x^(2j) mod modulus_big
        self._sq_cols = [gf2poly.mod(1 << (2 * j), modulus_big) for j in range(m)]
        self._frob_cache: dict[int, list[int]] = {0: [1 << j for j in range(m)]}
        self._np_tables: dict[tuple, list[np.ndarray]] = {}

        # base subfield inside the big field: fixed points of x -> x^(2^n)
        fix_cols = [self._frob_cols(n)[j] ^ (1 << j) for j in range(m)]
        sub_basis = _ColumnSolver(fix_cols).kernel_basis
        if len(sub_basis) != n:
            raise AssertionError("subfield dimension mismatch")
        sub = span(sub_basis)
        self.subfield: tuple[int, ...] = tuple(int(v) for v in sub)

        gamma = min(v for v in self.subfield
                    if v and self._eval_gf2_poly(modulus_base, v) == 0)
        self._embed_cols = [self.pow(gamma, i) for i in range(n)]
        if sorted(self.embed_base(a) for a in range(1 << n)) != list(self.subfield):
            raise AssertionError("embedding image differs from the fixed field")
        self._project = _ColumnSolver(self._embed_cols)
        self._subfield_basis = sub_basis

    # ------------------------------------------------------------------ core

    @staticmethod
    def add(x: int, y: int) -> int:
        """Field addition; identical to x ^ y."""
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        return gf2poly.mod(gf2poly.mul(x, y), self.modulus_big)

    def sqr(self, x: int) -> int:
        return self.frobenius(x, 1)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        t0, t1 = 0, 1
        r0, r1 = self.modulus_big, x
        while r1:
            q, r = gf2poly.divmod_poly(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 ^ gf2poly.mul(q, t1)
        if r0 != 1:
            raise AssertionError("modulus not irreducible")
        return gf2poly.mod(t0, self.modulus_big)

    def inv_batch(self, values: list[int]) -> list[int]:
        """Invert many elements with one field inversion (prefix-product trick)."""
        prefix = []
        acc = 1
        for v in values:
            if v == 0:
                raise ZeroDivisionError("inverse of zero")
            prefix.append(acc)
            acc = self.mul(acc, v)
        inv_acc = self.inv(acc)
        out = [0] * len(values)
        for i in range(len(values) - 1, -1, -1):
            out[i] = self.mul(inv_acc, prefix[i])
            inv_acc = self.mul(inv_acc, values[i])
        return out

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x = self.inv(x)
            e = -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    # ------------------------------------------------------------- frobenius

    def _frob_cols(self, i: int) -> list[int]:
        """Columns of x -> x^(2^i) in the polynomial basis, cached per i."""
        i %= self.big_degree
        cached = self._frob_cache.get(i)
        if cached is not None:
            return cached
        prev = self._frob_cols(i - 1)
        cols = [self._apply_cols(self._sq_cols, c) for c in prev]
        self._frob_cache[i] = cols
        return cols

    @staticmethod
    def _apply_cols(cols: list[int], x: int) -> int:
        r = 0
        j = 0
        while x:
            if x & 1:
                r ^= cols[j]
            x >>= 1
            j += 1
        return r

    def frobenius(self, x: int, i: int) -> int:
        """x^(2^i); i is reduced modulo 6n."""
        return self._apply_cols(self._frob_cols(i), x)

    def degree_over_base(self, x: int) -> int:
        """Least d dividing 6 with x^(2^(dn)) = x."""
        for d in (1, 2, 3, 6):
            if self.frobenius(x, d * self.n) == x:
                return d
        raise AssertionError("element outside the degree-6 tower")

    def is_degree_six(self, x: int) -> bool:
        n = self.n
        return self.frobenius(x, 2 * n) != x and self.frobenius(x, 3 * n) != x

    def trace(self, x: int, from_bits: int, to_bits: int) -> int:
        """Relative trace from GF(2^from_bits) down to GF(2^to_bits)."""
        m = self.big_degree
        if from_bits % to_bits or m % from_bits:
            raise ValueError("trace levels must divide each other and 6n")
        if self.frobenius(x, from_bits) != x:
            raise ValueError("element does not lie in the source field")
        acc = 0
        y = x
        for _ in range(from_bits // to_bits):
            acc ^= y
            y = self.frobenius(y, to_bits)
        return acc

    # ------------------------------------------------------------- embedding

    def embed_base(self, a: int) -> int:
        """Embed a base-field encoding (n bits) into the big field."""
        if a >> self.n:
            raise ValueError("base-field encoding out of range")
        return self._apply_cols(self._embed_cols, a)

    def to_base(self, x: int) -> int:
        """Inverse of embed_base; raises if x is not in the embedded subfield."""
        a = self._project.solve(x)
        if a is None:
            raise ValueError("element is not in the embedded base field")
        return a

    def subfield_nonzero(self) -> tuple[int, ...]:
        return self.subfield[1:]

    def subfield_span_array(self, bits: int) -> np.ndarray:
        """The subfield GF(2^bits) of the big field as a sorted int64 array."""
        if self.big_degree % bits:
            raise ValueError("not a subfield of the tower's big field")
        fix = [self._frob_cols(bits)[j] ^ (1 << j) for j in range(self.big_degree)]
        basis = _ColumnSolver(fix).kernel_basis
        if len(basis) != bits:
            raise AssertionError("subfield dimension mismatch")
        return span(basis)

    # --------------------------------------------------------- polynomials

    def _eval_gf2_poly(self, p: int, x: int) -> int:
        """Evaluate a GF(2)-coefficient polynomial at a big-field point."""
        r = 0
        xp = 1
        for k in range(gf2poly.degree(p) + 1):
            if (p >> k) & 1:
                r ^= xp
            xp = self.mul(xp, x)
        return r

    def minimal_polynomial(self, alpha: int) -> tuple[int, ...]:
        """Monic minimal polynomial of alpha over GF(2^n).

        Coefficients are returned ascending by degree, pre-embedded in the
        big field. The degree equals degree_over_base(alpha).
        """
        d = self.degree_over_base(alpha)
        poly = [1]
        c = alpha
        for _ in range(d):
            nxt = [0] * (len(poly) + 1)
            for k, pk in enumerate(poly):
                nxt[k + 1] ^= pk
                nxt[k] ^= self.mul(pk, c)
            poly = nxt
            c = self.frobenius(c, self.n)
        if c != alpha:
            raise AssertionError("conjugate orbit did not close")
        for pk in poly:
            if self.frobenius(pk, self.n) != pk:
                raise AssertionError("coefficient escaped the base field")
        return tuple(poly)

    def eval_poly(self, coeffs: tuple[int, ...] | list[int], x: int) -> int:
        """Evaluate a big-field-coefficient polynomial (ascending) at x."""
        r = 0
        for c in reversed(coeffs):
            r = self.mul(r, x) ^ c
        return r

    # ------------------------------------------------------------ serialization

    @property
    def hex_width(self) -> int:
        return -(-self.big_degree // 4)

    def to_hex(self, x: int) -> str:
        if not 0 <= x < self.order:
            raise ValueError("encoding out of range")
        return format(x, f"0{self.hex_width}x")

    def from_hex(self, s: str) -> int:
        x = int(s, 16)
        if x >> self.big_degree:
            raise ValueError("encoding out of range")
        return x

    def base_to_hex(self, a: int) -> str:
        if a >> self.n:
            raise ValueError("base encoding out of range")
        return format(a, f"0{-(-self.n // 4)}x")

    # ------------------------------------------------------------ numpy paths

    def _byte_tables(self, cols: list[int]) -> list[np.ndarray]:
        """256-entry lookup tables per byte of input for a GF(2)-linear map."""
        m = self.big_degree
        if m > 63:
            raise ValueError("vectorized paths need encodings below 64 bits")
        nbytes = -(-m // 8)
        tables = []
        for bpos in range(nbytes):
            tab = np.zeros(256, dtype=np.int64)
            for v in range(256):
                acc = 0
                vv = v
                j = 8 * bpos
                while vv and j < m:
                    if vv & 1:
                        acc ^= cols[j]
                    vv >>= 1
                    j += 1
                tab[v] = acc
            tables.append(tab)
        return tables

    def frob_tables(self, i: int) -> list[np.ndarray]:
        key = ("frob", i % self.big_degree)
        tabs = self._np_tables.get(key)
        if tabs is None:
            tabs = self._byte_tables(self._frob_cols(i))
            self._np_tables[key] = tabs
        return tabs

    def mult_tables(self, c: int) -> list[np.ndarray]:
        """Byte tables of the fixed-multiplier map x -> c * x."""
        key = ("mult", c)
        tabs = self._np_tables.get(key)
        if tabs is None:
            tabs = self._byte_tables([self.mul(c, 1 << j) for j in range(self.big_degree)])
            self._np_tables[key] = tabs
        return tabs

    @staticmethod
    def apply_tables(tables: list[np.ndarray], x: np.ndarray) -> np.ndarray:
        out = tables[0][x & 0xFF]
        for bpos in range(1, len(tables)):
            out ^= tables[bpos][(x >> (8 * bpos)) & 0xFF]
        return out

    def frobenius_vec(self, x: np.ndarray, i: int) -> np.ndarray:
        return self.apply_tables(self.frob_tables(i), x)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Tower)
                and (self.n, self.modulus_base, self.modulus_big)
                == (other.n, other.modulus_base, other.modulus_big))

    def __hash__(self) -> int:
        return hash((self.n, self.modulus_base, self.modulus_big))

    def __repr__(self) -> str:
        base = ",".join(map(str, gf2poly.exponents(self.modulus_base)))
        big = ",".join(map(str, gf2poly.exponents(self.modulus_big)))
        return f"Tower(n={self.n}, base=[{base}], big=[{big}])"


def make_tower(n: int, modulus_base: int | None = None,
               modulus_big: int | None = None) -> Tower:
    """Build the tower for a given n; moduli default to the deterministic pick."""
    return Tower(n, modulus_base=modulus_base, modulus_big=modulus_big)
