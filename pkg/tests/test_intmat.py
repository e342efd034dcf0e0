"""Tests for the exact integer matrix kernel.

Every nontrivial expected value is checked against an oracle computed
independently in this file: cofactor determinants, gcds of k x k minors
(the classical invariant-factor characterization), and brute-force
enumeration of congruence solutions.  The implementation is never used
to certify itself.
"""

import doctest
import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealsplit import intmat


# --- oracles -----------------------------------------------------------

def det_oracle(mat):
    """Cofactor-expansion determinant, exact, for small square matrices."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        sign = 1 if j % 2 == 0 else -1
        total += sign * mat[0][j] * det_oracle(minor)
    return total


def minors_gcd_oracle(mat, rows, cols, k):
    """gcd of all k x k minors (0 if all vanish)."""
    g = 0
    for ridx in itertools.combinations(range(rows), k):
        for cidx in itertools.combinations(range(cols), k):
            sub = [[mat[i][j] for j in cidx] for i in ridx]
            g = math.gcd(g, det_oracle(sub))
    return g


def invariant_factors_oracle(mat, rows, cols):
    """Diagonal of the Smith form via the minor-gcd characterization."""
    facs = []
    g_prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = minors_gcd_oracle(mat, rows, cols, k)
        if g == 0:
            break
        facs.append(g // g_prev)
        g_prev = g
    return facs + [0] * (min(rows, cols) - len(facs))


def is_unimodular(mat):
    return abs(det_oracle(mat)) == 1


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def random_row_mix(rng, mat, rows, cols, ops=8):
    """Apply random invertible integer row operations."""
    out = [row[:] for row in mat]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, k = rng.randrange(rows), rng.randrange(rows)
        if kind == 0 and i != k:
            out[i], out[k] = out[k], out[i]
        elif kind == 1:
            out[i] = [-x for x in out[i]]
        elif i != k:
            t = rng.randint(-3, 3)
            out[i] = [a + t * b for a, b in zip(out[i], out[k])]
    return out


# --- smith form --------------------------------------------------------

def test_smith_frozen_example():
    mat = [[2, 4], [6, 8]]
    d, u, uinv, v, vinv = intmat.smith_form(mat)
    # oracle: gcd of entries is 2, |det| = 8, so factors are (2, 4)
    assert invariant_factors_oracle(mat, 2, 2) == [2, 4]
    assert intmat.smith_diagonal(d) == [2, 4]
    assert intmat.matmul(intmat.matmul(u, mat), v) == d
    assert intmat.matmul(u, uinv) == intmat.identity(2)
    assert intmat.matmul(v, vinv) == intmat.identity(2)


def test_smith_rank_deficient():
    mat = [[2, 4], [1, 2]]
    d, u, uinv, v, vinv = intmat.smith_form(mat)
    assert intmat.smith_diagonal(d) == invariant_factors_oracle(mat, 2, 2) == [1, 0]
    assert intmat.matmul(intmat.matmul(u, mat), v) == d


def test_smith_empty_and_zero():
    d, u, uinv, v, vinv = intmat.smith_form([], cols=3)
    assert d == [] and u == [] and v == intmat.identity(3)
    d, u, uinv, v, vinv = intmat.smith_form([[], []], cols=0)
    assert d == [[], []] and v == []
    d, *_ = intmat.smith_form(intmat.zeros(2, 3))
    assert intmat.smith_diagonal(d) == [0, 0]


def test_smith_matches_minor_oracle_seeded():
    rng = random.Random(0x5EED0)
    for _ in range(120):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        mat = random_matrix(rng, rows, cols)
        d, u, uinv, v, vinv = intmat.smith_form(mat)
        diag = intmat.smith_diagonal(d)
        assert diag == invariant_factors_oracle(mat, rows, cols)
        # divisibility chain and sign
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and (a == 0 or b % a == 0)
        # transforms are exact and invertible
        assert intmat.matmul(intmat.matmul(u, mat), v) == d
        assert intmat.matmul(u, uinv) == intmat.identity(rows)
        assert intmat.matmul(uinv, u) == intmat.identity(rows)
        assert intmat.matmul(v, vinv) == intmat.identity(cols)
        assert is_unimodular(u) and is_unimodular(v)


def test_smith_deterministic():
    mat = [[4, 6, 2], [0, 3, 9], [5, 5, 5]]
    first = intmat.smith_form(mat)
    second = intmat.smith_form([row[:] for row in mat])
    assert first == second


# --- hermite form ------------------------------------------------------

def assert_canonical_hnf(h):
    pivots = []
    seen_zero = False
    for i, row in enumerate(h):
        pj = next((j for j in range(len(row)) if row[j]), None)
        if pj is None:
            seen_zero = True
            continue
        assert not seen_zero, "zero row above a nonzero row"
        assert row[pj] > 0
        if pivots:
            assert pj > pivots[-1][1]
        pivots.append((i, pj))
    for i, pj in pivots:
        p = h[i][pj]
        for k in range(i):
            assert 0 <= h[k][pj] < p
    return pivots


def test_hnf_frozen_example():
    h, u = intmat.hnf_rows([[2, 4], [6, 8]])
    # by hand: (6,8) - 3*(2,4) = (0,-4); normalize; reduce (2,4) above
    assert h == [[2, 0], [0, 4]]
    assert intmat.matmul(u, [[2, 4], [6, 8]]) == h
    assert is_unimodular(u)


def test_hnf_canonical_shape_seeded():
    rng = random.Random(0x5EED1)
    for _ in range(120):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        mat = random_matrix(rng, rows, cols)
        h, u = intmat.hnf_rows(mat)
        assert_canonical_hnf(h)
        assert intmat.matmul(u, mat) == h
        assert is_unimodular(u)


def test_hnf_is_lattice_invariant():
    rng = random.Random(0x5EED2)
    for _ in range(60):
        rows, cols = rng.randint(2, 4), rng.randint(1, 4)
        mat = random_matrix(rng, rows, cols)
        mixed = random_row_mix(rng, mat, rows, cols)
        assert intmat.hnf_nonzero(mat, cols) == intmat.hnf_nonzero(mixed, cols)


def test_hnf_idempotent():
    rng = random.Random(0x5EED3)
    for _ in range(40):
        mat = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        h, _ = intmat.hnf_rows(mat)
        h2, _ = intmat.hnf_rows(h)
        assert h == h2


def test_reduce_vector_membership():
    basis = intmat.hnf_nonzero([[2, 0, 3], [0, 4, 1]], cols=3)
    member = [2 * 3 + 0, 4 * -2, 3 * 3 + 1 * -2]
    assert intmat.lattice_contains(member, basis)
    assert not intmat.lattice_contains([1, 0, 0], basis)
    reduced, coeffs = intmat.reduce_vector(member, basis, track=True)
    assert reduced == [0, 0, 0]
    acc = [0, 0, 0]
    for q, row in zip(coeffs, basis):
        acc = [a + q * b for a, b in zip(acc, row)]
    assert acc == member


# --- solving -----------------------------------------------------------

def test_solve_columns_roundtrip_seeded():
    rng = random.Random(0x5EED4)
    for _ in range(120):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        mat = random_matrix(rng, rows, cols)
        x = [rng.randint(-6, 6) for _ in range(cols)]
        b = intmat.matvec(mat, x)
        got = intmat.solve_columns(mat, b)
        assert got is not None
        assert intmat.matvec(mat, got) == b


def test_solve_columns_insoluble():
    assert intmat.solve_columns([[2]], [1]) is None
    assert intmat.solve_columns([[2, 0], [0, 0]], [0, 1]) is None
    assert intmat.solve_columns([[3, 6]], [4]) is None


def test_solve_columns_deterministic():
    # underdetermined system: answer is pinned by the canonical echelon
    a = intmat.solve_columns([[1, 1]], [5])
    b = intmat.solve_columns([[1, 1]], [5])
    assert a == b
    assert a[0] + a[1] == 5


def test_kernel_columns_frozen():
    ker = intmat.kernel_columns([[2, 4]])
    assert intmat.hnf_nonzero(ker, cols=2) == intmat.hnf_nonzero([[2, -1]], cols=2)
    assert intmat.kernel_columns(intmat.identity(3)) == []
    full = intmat.kernel_columns([], cols=3)
    assert intmat.hnf_nonzero(full, cols=3) == intmat.identity(3)


def test_kernel_columns_seeded():
    rng = random.Random(0x5EED5)
    for _ in range(80):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        mat = random_matrix(rng, rows, cols)
        ker = intmat.kernel_columns(mat)
        for vec in ker:
            assert intmat.matvec(mat, vec) == [0] * rows
        # completeness: any random kernel member lies in the spanned lattice
        basis = intmat.hnf_nonzero(ker, cols=cols) if ker else []
        for _ in range(5):
            x = [rng.randint(-5, 5) for _ in range(cols)]
            if intmat.matvec(mat, x) == [0] * rows:
                assert intmat.lattice_contains(x, basis)


# --- congruence solver -------------------------------------------------

def brute_solutions(rows, rhs, row_mods, nvars, var_mods):
    """All admissible tuples, by exhaustive enumeration (finite moduli only)."""
    assert all(var_mods), "brute force needs every variable bounded"
    sols = []
    for tup in itertools.product(*(range(m) for m in var_mods)):
        ok = True
        for row, b, m in zip(rows, rhs, row_mods):
            s = sum(a * x for a, x in zip(row, tup)) - b
            if (s % m if m else s) != 0:
                ok = False
                break
        if ok:
            sols.append(list(tup))
    return sols


def test_solve_congruences_frozen():
    sol, lattice = intmat.solve_congruences([[1]], [1], [2], 1, [4])
    assert sol == [1] and lattice == [[2]]
    sol, lattice = intmat.solve_congruences([[3]], [0], [6], 1, [0])
    assert sol == [0] and lattice == [[2]]
    assert intmat.solve_congruences([[2]], [1], [4], 1, [0]) is None


def compatible_row(rng, var_mods, row_mod):
    """Random row that is well defined modulo every variable modulus."""
    row = []
    for d in var_mods:
        if row_mod == 0:
            # an exact-equality row can only touch a Z/d variable trivially
            row.append(0 if d else rng.randint(-4, 4))
        else:
            step = row_mod // math.gcd(row_mod, d) if d else 1
            row.append(step * rng.randint(-3, 3))
    return row


def test_solve_congruences_matches_bruteforce():
    rng = random.Random(0x5EED6)
    solvable = 0
    for _ in range(200):
        nvars = rng.randint(1, 3)
        nrows = rng.randint(0, 3)
        var_mods = [rng.choice([2, 3, 4, 5, 6]) for _ in range(nvars)]
        row_mods = [rng.choice([0, 2, 3, 4, 6]) for _ in range(nrows)]
        rows = [compatible_row(rng, var_mods, m) for m in row_mods]
        rhs = [rng.randint(-4, 4) for _ in range(nrows)]
        expected = brute_solutions(rows, rhs, row_mods, nvars, var_mods)
        got = intmat.solve_congruences(rows, rhs, row_mods, nvars, var_mods)
        if not expected:
            assert got is None, (rows, rhs, row_mods, var_mods)
            continue
        solvable += 1
        assert got is not None, (rows, rhs, row_mods, var_mods)
        sol, lattice = got
        assert sol == min(expected)
        # the reported lattice generates exactly the solution set
        for vec in expected:
            diff = [a - b for a, b in zip(vec, sol)]
            assert intmat.lattice_contains(diff, lattice)
        rsol, _ = intmat.solve_congruences(
            rows, rhs, row_mods, nvars, var_mods, variant="revmin")
        assert rsol == min(expected, key=lambda t: t[::-1])
    assert solvable >= 30  # the sweep actually exercised the solver


def test_solve_congruences_rejects_ill_posed():
    # x = 1 mod 4 over a Z/2 variable: the row is not invariant under x+2
    with pytest.raises(ValueError):
        intmat.solve_congruences([[1]], [1], [4], 1, [2])


def test_solve_congruences_no_constraints():
    # an empty system is solved by every tuple: full homogeneous lattice
    sol, lattice = intmat.solve_congruences([], [], [], 2, [3, 5])
    assert sol == [0, 0]
    assert lattice == [[1, 0], [0, 1]]
    # 2y = 0 mod 8 over (x free, y in Z/4) forces y = 0, x unconstrained
    sol, lattice = intmat.solve_congruences([[0, 2]], [0], [8], 2, [0, 4])
    assert sol == [0, 0]
    assert lattice == [[1, 0], [0, 4]]


def test_solve_congruences_shape_errors():
    with pytest.raises(ValueError):
        intmat.solve_congruences([[1]], [1, 2], [2], 1, [2])
    with pytest.raises(ValueError):
        intmat.solve_congruences([[1]], [1], [2], 1, [2, 2])
    with pytest.raises(ValueError):
        intmat.solve_congruences([[1]], [1], [2], 1, [2], variant="other")


# --- property tests ----------------------------------------------------

small_entries = st.integers(min_value=-12, max_value=12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_entries, min_size=3, max_size=3),
                min_size=1, max_size=3))
def test_property_smith_diag_is_invariant_factors(mat):
    d, u, uinv, v, vinv = intmat.smith_form(mat)
    assert intmat.smith_diagonal(d) == invariant_factors_oracle(mat, len(mat), 3)
    assert intmat.matmul(intmat.matmul(u, mat), v) == d


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_entries, min_size=2, max_size=2),
                min_size=1, max_size=4))
def test_property_hnf_canonical(mat):
    h, u = intmat.hnf_rows(mat)
    assert_canonical_hnf(h)
    assert intmat.matmul(u, mat) == h
    h2, _ = intmat.hnf_rows(h)
    assert h == h2


def test_doctests():
    results = doctest.testmod(intmat)
    assert results.failed == 0 and results.attempted > 0
