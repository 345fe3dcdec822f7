from repstab.characters import ClassFunction
from repstab.e2 import (
    E2Page,
    InvariantComplex,
    block_character_at_n,
    block_rows,
    blocks_of,
    e2_cell_character,
    e2_cell_dim,
    invariant_cell_dim,
    set_partitions_of_shape,
)
from repstab.manifolds import load_manifold
from repstab.partitions import partitions_of
from repstab.perms import all_perms, class_representative
from repstab.stability import stable_multiplicities

TORUS = load_manifold("torus")
S2 = load_manifold("s2")
S3 = load_manifold("s3")


def test_blocks_of():
    assert blocks_of((), 3) == ((1,), (2,), (3,))
    assert blocks_of(((1, 2),), 3) == ((1, 2), (3,))
    assert blocks_of(((1, 2), (2, 3)), 4) == ((1, 2, 3), (4,))


def test_set_partitions_of_shape_counts():
    assert len(set_partitions_of_shape(4, (2, 2))) == 3
    assert len(set_partitions_of_shape(4, (2, 1, 1))) == 6
    assert len(set_partitions_of_shape(6, (3, 2, 1))) == 60


def test_torus_n2_cell_dims():
    page = E2Page(TORUS, 2)
    dims = page.cell_dims()
    assert [dims.get((p, 0), 0) for p in range(5)] == [1, 4, 6, 4, 1]
    assert [dims.get((p, 1), 0) for p in range(3)] == [1, 2, 1]


def test_single_point_page():
    page = E2Page(TORUS, 1)
    dims = page.cell_dims()
    assert dims == {(0, 0): 1, (1, 0): 2, (2, 0): 1}


def test_d_squared_zero():
    for desc in (TORUS, S2, S3):
        for n in (2, 3):
            assert E2Page(desc, n).check_d_squared()


def test_differential_equivariance():
    page = E2Page(TORUS, 3)
    for sigma in all_perms(3):
        for (p, q), keys in page.cells.items():
            if q == 0:
                continue
            for key in keys[::7]:
                lhs = page.act_vec(sigma, page.diff_key(key))
                rhs = page.diff_vec(page.act_key(sigma, key))
                assert lhs == rhs


def test_explicit_dims_match_character_backend():
    for desc in (TORUS, S2, S3):
        for n in (2, 3, 4):
            page = E2Page(desc, n)
            d = desc.d
            for (p, q), keys in page.cells.items():
                qd1 = q * (d - 1)
                assert e2_cell_dim(desc, n, p, qd1) == len(keys)
                assert e2_cell_character(desc, n, p, qd1).degree() == len(keys)


def test_explicit_traces_match_character_backend():
    for desc in (TORUS, S2):
        for n in (2, 3):
            page = E2Page(desc, n)
            d = desc.d
            for (p, q), keys in page.cells.items():
                values = []
                for rho in partitions_of(n):
                    g = class_representative(rho, n)
                    values.append(sum(page.act_key(g, key).get(key, 0) for key in keys))
                explicit = ClassFunction(n, tuple(values))
                assert explicit == e2_cell_character(desc, n, p, q * (d - 1))


def test_c2_sphere_betti():
    # C_2(S^2) is homotopy equivalent to S^2 (forget-a-point bundle with
    # contractible fiber): Betti (1, 0, 1, 0), Euler characteristic 2
    page = E2Page(S2, 2)
    assert [page.betti_ordered(i) for i in range(4)] == [1, 0, 1, 0]
    assert page.euler_characteristic() == 2


def test_c2_torus_betti():
    # C_2(T^2) = T^2 x (T^2 minus a point): Poincare (1,2,1)*(1,2,0)
    page = E2Page(TORUS, 2)
    assert [page.betti_ordered(i) for i in range(5)] == [1, 4, 5, 2, 0]


def test_euler_characteristic_of_page():
    # chi(C_n(M)) = chi(M)(chi(M)-1)...(chi(M)-n+1)
    for desc, chi_m in ((TORUS, 0), (S2, 2)):
        for n in (2, 3):
            expected = 1
            for j in range(n):
                expected *= chi_m - j
            page = E2Page(desc, n)
            assert page.euler_characteristic() == expected
            top = max(p + qd1 for (p, qd1) in page.cell_dims())
            total = sum((-1) ** i * page.betti_ordered(i) for i in range(top + 1))
            assert total == expected


def test_invariant_cell_dims_match_average():
    for desc in (TORUS, S2):
        for n in (2, 3, 4):
            page = E2Page(desc, n)
            inv = InvariantComplex(page)
            for q in range(n // 2 + 1):
                for p in range(0, 2 * n + 1):
                    ech = inv.basis(p, q)  # raises if the closed form disagrees
                    assert ech.dim == invariant_cell_dim(desc, n, p, q)


def test_invariant_dim_is_trivial_multiplicity():
    # closed form vs character inner product with the trivial character
    from repstab.characters import trivial_character

    for desc in (TORUS, S3):
        d = desc.d
        for n in (2, 3, 4):
            for q in range(n // 2 + 1):
                for p in range(0, 5):
                    chi = e2_cell_character(desc, n, p, q * (d - 1))
                    expected = chi.inner(trivial_character(n))
                    assert invariant_cell_dim(desc, n, p, q) == expected


def test_odd_dimension_kills_positive_rows():
    for n in (2, 3, 4):
        for q in range(1, n // 2 + 1):
            for p in range(0, 7):
                assert invariant_cell_dim(S3, n, p, q) == 0


def test_block_characters_sum_to_cell():
    for desc in (TORUS, S2):
        d = desc.d
        for n in (3, 4):
            for (p, qd1) in [(0, d - 1), (1, d - 1), (2, 0), (1, 0)]:
                rows = block_rows(desc, p, qd1)
                total = None
                for row in rows:
                    chi = block_character_at_n(desc, n, row["mu"], row["r"], row["alpha"])
                    total = chi if total is None else total + chi
                cell = e2_cell_character(desc, n, p, qd1)
                if total is None:
                    assert cell.degree() == 0
                else:
                    assert total == cell


def test_block_sharpness_fixture():
    # mu = (1^q), r = 0, alpha = (1^p): k = 2q + p, stabilization at 4q + 2p
    q, p = 1, 1
    rows = block_rows(TORUS, p, q * (TORUS.d - 1))
    fixture = [
        row for row in rows if row["mu"] == (1,) and row["r"] == 0 and row["alpha"] == (1,)
    ]
    assert len(fixture) == 1
    row = fixture[0]
    assert row["k"] == 2 * q + p == 3
    assert row["stable_from"] == 4 * q + 2 * p == 6
    # multiplicities really do change at n = 5 and settle from n = 6 onward
    mults = {
        n: stable_multiplicities(block_character_at_n(TORUS, n, (1,), 0, (1,)))
        for n in (5, 6, 7, 8)
    }
    assert mults[5] != mults[6]
    assert mults[6] == mults[7] == mults[8]


def test_epsilon_invariants_degree_floor():
    # the sign-isotypic part of H^*(M^q) vanishes below degree kq - k, where
    # k is the lowest positive degree carrying cohomology
    from repstab.e2 import epsilon_word_multisets

    for desc, k in ((TORUS, 1), (S3, 3)):
        for q in (1, 2, 3):
            degrees = [
                sum(desc.degrees[c] for c in multi)
                for multi in epsilon_word_multisets(desc, q)
            ]
            assert degrees
            assert min(degrees) == k * q - k


def test_cyclic_trace_lemma_brute_force():
    # trace of (cyclic shift) on V^(x t) with Koszul signs: graded dims with
    # sign (-1)^(j(t-1)); brute-forced on a tiny graded space
    degrees = [0, 1, 1, 2]  # dims: b_0=1, b_1=2, b_2=1

    def brute(t):
        from itertools import product

        total = {}
        for word in product(range(len(degrees)), repeat=t):
            # shift: (v1..vt) -> (vt, v1..v_{t-1}), sign: vt over the others
            moved = degrees[word[-1]] * sum(degrees[c] for c in word[:-1])
            sign = -1 if moved % 2 else 1
            target = (word[-1],) + word[:-1]
            if target == word:
                deg = sum(degrees[c] for c in word)
                total[deg] = total.get(deg, 0) + sign
        return total

    for t in (1, 2, 3):
        expected = {}
        for j, dim in ((0, 1), (1, 2), (2, 1)):
            expected[j * t] = expected.get(j * t, 0) + (-1) ** (j * (t - 1)) * dim
        assert brute(t) == {k: v for k, v in expected.items() if v}
