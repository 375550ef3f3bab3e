import random

import numpy as np
import pytest

from goppa_orbits import gf2poly, make_tower
from goppa_orbits.gf2tower import (
    LinearizedMap,
    compose_linearized,
    frobenius_linearized,
    identity_linearized,
    linearized_sum,
    solve_affine_linearized,
)


from conftest import schoolbook_mul


def test_construction_rejects_small_and_huge_n():
    with pytest.raises(ValueError):
        make_tower(1)
    with pytest.raises(ValueError):
        make_tower(17)


def test_deterministic_moduli(tower5):
    again = make_tower(5)
    assert again.modulus_base == tower5.modulus_base
    assert again.modulus_big == tower5.modulus_big
    assert gf2poly.exponents(tower5.modulus_base) == [5, 2, 0]
    assert gf2poly.exponents(tower5.modulus_big) == [30, 1, 0]
    assert again == tower5


def test_modulus_overrides_validated():
    with pytest.raises(ValueError):
        make_tower(2, modulus_base=0b110)
    with pytest.raises(ValueError):
        make_tower(2, modulus_big=(1 << 12) | 1)
    alt = make_tower(2, modulus_big=gf2poly.from_exponents([12, 6, 4, 1, 0]))
    assert alt.modulus_big != make_tower(2).modulus_big
    x = 0x5ab
    assert alt.mul(x, alt.inv(x)) == 1


def test_field_axioms_n2_exhaustive_inverses(tower2):
    for x in range(1, 1 << 12):
        if x % 97:
            continue
        assert tower2.mul(x, tower2.inv(x)) == 1
    assert tower2.mul(0x2b3, 1) == 0x2b3
    with pytest.raises(ZeroDivisionError):
        tower2.inv(0)


def test_f4_multiplication_table(tower2):
    # embedded generator of GF(4) satisfies g^2 = g + 1
    g = tower2.embed_base(0b10)
    assert tower2.mul(g, g) == tower2.embed_base(0b11)
    assert tower2.mul(g, g) == g ^ 1


def test_mul_against_schoolbook(tower5):
    rng = random.Random(2)
    for _ in range(200):
        x = rng.getrandbits(30)
        y = rng.getrandbits(30)
        assert tower5.mul(x, y) == schoolbook_mul(tower5, x, y)


def test_inverse_law_random(tower5):
    rng = random.Random(3)
    for _ in range(100):
        x = rng.getrandbits(30)
        if x == 0:
            continue
        assert tower5.mul(x, tower5.inv(x)) == 1


def test_inv_batch(tower5):
    rng = random.Random(4)
    vals = [rng.getrandbits(30) | 1 for _ in range(33)]
    assert tower5.inv_batch(vals) == [tower5.inv(v) for v in vals]
    with pytest.raises(ZeroDivisionError):
        tower5.inv_batch([1, 0, 3])


def test_frobenius_group_law(tower5):
    rng = random.Random(5)
    m = tower5.big_degree
    for _ in range(25):
        x = rng.getrandbits(30)
        i, j = rng.randrange(m), rng.randrange(m)
        assert tower5.frobenius(x, 0) == x
        assert tower5.frobenius(x, m) == x
        assert (tower5.frobenius(tower5.frobenius(x, i), j)
                == tower5.frobenius(x, (i + j) % m))
        assert tower5.frobenius(x, 1) == tower5.mul(x, x)


def test_frobenius_fixed_field_count(tower2):
    # x -> x^(2^n) fixes exactly the 2^n embedded base-field elements
    fixed = [x for x in range(1 << 12) if tower2.frobenius(x, 2) == x]
    assert len(fixed) == 4
    assert tuple(fixed) == tower2.subfield


def test_generator_order(tower2):
    q1 = (1 << 12) - 1
    g = 2
    assert tower2.pow(g, q1) == 1


def test_degree_census_small(tower2, tower3):
    for ctx, n in ((tower2, 2), (tower3, 3)):
        if n == 2:
            counts = {1: 0, 2: 0, 3: 0, 6: 0}
            for x in range(1 << 12):
                counts[ctx.degree_over_base(x)] += 1
            assert counts == {1: 4, 2: 12, 3: 60, 6: 4020}
    assert tower2.degree_over_base(1) == 1
    expected = (1 << 12) - (1 << 4) - (1 << 6) + (1 << 2)
    assert expected == 4020


def test_degree_six_formula_values():
    # |S| = 2^(6n) - 2^(2n) - 2^(3n) + 2^n
    assert (1 << 30) - (1 << 10) - (1 << 15) + (1 << 5) == 1_073_708_064


def test_frobenius_vec_matches_scalar(tower5):
    rng = np.random.default_rng(6)
    x = rng.integers(0, 1 << 30, 500, dtype=np.int64)
    for i in (1, 5, 10, 15, 29):
        vec = tower5.frobenius_vec(x, i)
        for k in range(0, 500, 97):
            assert int(vec[k]) == tower5.frobenius(int(x[k]), i)


def test_embedding_is_field_homomorphism(tower5):
    rng = random.Random(7)
    n, base_mod = tower5.n, tower5.modulus_base
    for _ in range(50):
        a, b = rng.getrandbits(n), rng.getrandbits(n)
        ab = gf2poly.mod(gf2poly.mul(a, b), base_mod)
        assert (tower5.embed_base(a) ^ tower5.embed_base(b)
                == tower5.embed_base(a ^ b))
        assert (tower5.mul(tower5.embed_base(a), tower5.embed_base(b))
                == tower5.embed_base(ab))
    assert tower5.embed_base(0) == 0
    assert tower5.embed_base(1) == 1


def test_to_base_roundtrip(tower5):
    for a in range(32):
        assert tower5.to_base(tower5.embed_base(a)) == a
    with pytest.raises(ValueError):
        tower5.to_base(0x2)  # x has degree 30 over GF(2), not in the subfield


def test_minimal_polynomial_degrees(tower5):
    # base-field element: x + alpha
    e = tower5.embed_base(0b10011 & 0x1f)
    assert tower5.minimal_polynomial(e) == (e, 1)
    # embedded GF(4) generator at n=2 satisfies the unique irreducible quadratic
    t2 = make_tower(2)
    g = t2.embed_base(0b10)
    assert t2.frobenius(g, 1) == g ^ 1  # over GF(2): g^2 + g + 1 = 0
    rng = random.Random(8)
    for _ in range(5):
        x = rng.getrandbits(30)
        if not tower5.is_degree_six(x):
            continue
        po = tower5.minimal_polynomial(x)
        assert len(po) == 7 and po[-1] == 1
        assert tower5.eval_poly(po, x) == 0


def test_trace_properties(tower5):
    n, m = 5, 30
    assert tower5.trace(0, m, 1) == 0
    rng = random.Random(9)
    for _ in range(30):
        x = rng.getrandbits(30)
        assert tower5.trace(x, m, 1) in (0, 1)
    # Artin-Schreier image: half the base field has trace zero
    zero_trace = [b for b in tower5.subfield if tower5.trace(b, n, 1) == 0]
    assert len(zero_trace) == 1 << (n - 1)
    with pytest.raises(ValueError):
        tower5.trace(1, 7, 1)
    with pytest.raises(ValueError):
        tower5.trace(2, 5, 1)  # x is not in the base field


def test_hex_roundtrip(tower5):
    assert tower5.hex_width == 8
    assert tower5.to_hex(0x1f) == "0000001f"
    assert tower5.from_hex("0000001f") == 0x1f
    with pytest.raises(ValueError):
        tower5.from_hex("fffffffff")
    assert tower5.base_to_hex(31) == "1f"


def test_linearized_composition_matches_matrix_product(tower5):
    rng = random.Random(10)
    f = frobenius_linearized(tower5, 3)
    g = frobenius_linearized(tower5, 7)
    fg = compose_linearized(f, g)
    for _ in range(30):
        x = rng.getrandbits(30)
        assert fg.apply(x) == f.apply(g.apply(x))
    aff = LinearizedMap(f.cols, offset=0x123)
    comp = compose_linearized(aff, g)
    for _ in range(10):
        x = rng.getrandbits(30)
        assert comp.apply(x) == aff.apply(g.apply(x))


def test_solve_affine_identity(tower5):
    ident = identity_linearized(30)
    sols = solve_affine_linearized(ident, 0x5a5a)
    assert sols.tolist() == [0x5a5a]


def test_solve_affine_against_exhaustive_sweep(tower2):
    """GF(2^12) oracle: solver output equals a brute-force root sweep."""
    rng = random.Random(11)
    m = 12
    for _ in range(8):
        cols = tuple(rng.getrandbits(m) for _ in range(m))
        offset = rng.getrandbits(m)
        lmap = LinearizedMap(cols, offset)
        b = rng.getrandbits(m)
        got = solve_affine_linearized(lmap, b).tolist()
        brute = [x for x in range(1 << m) if lmap.apply(x) == b]
        assert got == brute
        # count is 0 or a power of two (a coset of the kernel)
        assert len(got) == 0 or (len(got) & (len(got) - 1)) == 0


def test_fixed_field_kernel(tower5):
    lmap = linearized_sum(frobenius_linearized(tower5, 6),
                          identity_linearized(30))
    sols = solve_affine_linearized(lmap, 0)
    assert sols.size == 64
    assert all(tower5.frobenius(int(v), 6) == int(v) for v in sols[:8])


def test_subfield_span_array(tower5):
    sub10 = tower5.subfield_span_array(10)
    assert sub10.size == 1 << 10
    assert all(tower5.frobenius(int(v), 10) == int(v) for v in sub10[:16])
    with pytest.raises(ValueError):
        tower5.subfield_span_array(7)
