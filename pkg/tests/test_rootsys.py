"""Root system construction: Cartan data, Weyl groups, chamber reflection."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tensorstat import (
    AlgebraSpec,
    DomainError,
    InvalidAlgebraError,
    WeylGroupTooLargeError,
    build_root_system,
    cartan_matrix,
    dominant_reflect,
    enumerate_weyl_group,
    weyl_group_order,
)


def test_spec_parse_roundtrip():
    for name in ["A1", "A7", "B2", "C3", "D4", "E6", "E7", "E8", "F4", "G2"]:
        spec = AlgebraSpec.parse(name)
        assert str(spec) == name


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G1", "H2", "A", "2A"])
def test_spec_parse_rejects(bad):
    with pytest.raises(InvalidAlgebraError):
        AlgebraSpec.parse(bad)


def test_cartan_matrix_oracles():
    assert cartan_matrix(AlgebraSpec.parse("A1")) == [[2]]
    assert cartan_matrix(AlgebraSpec.parse("A2")) == [[2, -1], [-1, 2]]
    # short root last in the B chain, long root last in the C chain
    assert cartan_matrix(AlgebraSpec.parse("B2")) == [[2, -1], [-2, 2]]
    assert cartan_matrix(AlgebraSpec.parse("C2")) == [[2, -2], [-1, 2]]
    assert cartan_matrix(AlgebraSpec.parse("G2")) == [[2, -1], [-3, 2]]


def test_cartan_matrix_structure():
    # integral, 2 on the diagonal, off-diagonal zero pattern symmetric
    for name in ["A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"]:
        C = cartan_matrix(AlgebraSpec.parse(name))
        r = len(C)
        for i in range(r):
            assert C[i][i] == 2
            for j in range(r):
                if i != j:
                    assert C[i][j] <= 0
                    assert (C[i][j] == 0) == (C[j][i] == 0)


def test_symmetrized_cartan_is_symmetric():
    for name in ["A3", "B4", "C3", "D4", "F4", "G2"]:
        rs = build_root_system(AlgebraSpec.parse(name))
        for i in range(rs.rank):
            for j in range(rs.rank):
                assert rs.B[i][j] == rs.B[j][i]
        # B = diag(d) C with d positive rationals
        for i in range(rs.rank):
            assert rs.d[i] > 0
            for j in range(rs.rank):
                assert rs.B[i][j] == rs.d[i] * rs.cartan[i][j]


POSITIVE_COUNTS = {
    "A1": 1,
    "A2": 3,
    "A5": 15,
    "B2": 4,
    "B4": 16,
    "C3": 9,
    "D3": 6,
    "D4": 12,
    "D5": 20,
    "G2": 6,
    "F4": 24,
    "E6": 36,
    "E7": 63,
    "E8": 120,
}


@pytest.mark.parametrize("name,count", sorted(POSITIVE_COUNTS.items()))
def test_positive_root_counts(name, count):
    rs = build_root_system(AlgebraSpec.parse(name))
    assert rs.n_positive == count
    assert rs.dim_g == rs.rank + 2 * count
    seen = set(rs.positive_roots)
    assert len(seen) == count
    # simple roots are the height-1 layer
    for i in range(rs.rank):
        e = tuple(int(i == j) for j in range(rs.rank))
        assert e in seen


WEYL_ORDERS = {
    "A2": 6,
    "A3": 24,
    "B2": 8,
    "B3": 48,
    "C4": 384,
    "D4": 192,
    "G2": 12,
    "F4": 1152,
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
}


def test_weyl_group_orders():
    for name, order in WEYL_ORDERS.items():
        assert weyl_group_order(AlgebraSpec.parse(name)) == order


def test_rho_is_sum_of_fundamental_weights():
    for name in ["A1", "A3", "B2", "C3", "D4", "G2", "F4"]:
        rs = build_root_system(AlgebraSpec.parse(name))
        assert rs.rho_weight == tuple([1] * rs.rank)
        # rho in root coordinates: half sum of positive roots
        half_sum = [Fraction(0)] * rs.rank
        for beta in rs.positive_roots:
            for i in range(rs.rank):
                half_sum[i] += Fraction(beta[i], 2)
        assert tuple(half_sum) == rs.rho_root


def test_rho_pairs_with_simple_roots():
    # (rho, alpha_j) = d_j, i.e. <rho, alpha_j^vee> = 1
    rs = build_root_system(AlgebraSpec.parse("F4"))
    for i, beta in enumerate(rs.positive_roots):
        if sum(beta) != 1:
            continue
        j = beta.index(1)
        assert rs.pair_weight_posroot(rs.rho_weight, i) == rs.d[j]


def test_basis_conversion_roundtrip():
    rs = build_root_system(AlgebraSpec.parse("B3"))
    w = (2, 0, 5)
    rc = rs.root_coords(w)
    assert rs.weight_coords(rc) == tuple(Fraction(c) for c in w)


def test_enumerate_weyl_a2():
    rs = build_root_system(AlgebraSpec.parse("A2"))
    W = enumerate_weyl_group(rs)
    assert len(W) == 6
    assert sum(w.parity for w in W) == 0
    mats = {w.action for w in W}
    assert len(mats) == 6
    for w in W:
        assert w.parity == (-1) ** len(w.word)


def test_enumerate_weyl_respects_cap():
    rs = build_root_system(AlgebraSpec.parse("E8"))
    with pytest.raises(WeylGroupTooLargeError):
        enumerate_weyl_group(rs)  # |W| = 696729600 over the default cap


def test_dominant_reflect_fixed_points():
    rs = build_root_system(AlgebraSpec.parse("B2"))
    lam, parity, singular = dominant_reflect(rs, (3, 1))
    assert (lam, parity, singular) == ((3, 1), 1, False)
    lam, parity, singular = dominant_reflect(rs, (0, 2))
    assert singular and lam == (0, 2)


def test_dominant_reflect_a1_oracle():
    rs = build_root_system(AlgebraSpec.parse("A1"))
    assert dominant_reflect(rs, (-5,)) == ((5,), -1, False)
    assert dominant_reflect(rs, (4,)) == ((4,), 1, False)
    assert dominant_reflect(rs, (0,)) == ((0,), 1, True)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
@given(coords=st.lists(st.integers(min_value=-8, max_value=8), min_size=2, max_size=2))
def test_dominant_reflect_properties(name, coords):
    rs = build_root_system(AlgebraSpec.parse(name))
    lam, parity, singular = dominant_reflect(rs, coords)
    assert rs.is_dominant(lam)
    assert parity in (-1, 1)
    assert singular == any(c == 0 for c in lam)
    # the dominant representative is Weyl-invariant data
    for w in enumerate_weyl_group(rs):
        moved = w.apply_root(rs.root_coords(coords))
        lam2, parity2, singular2 = dominant_reflect(rs, rs.weight_coords(moved))
        assert lam2 == lam
        assert singular2 == singular
        if not singular:
            assert parity2 == parity * w.parity


def test_inner_product_positive_definite_sample():
    rs = build_root_system(AlgebraSpec.parse("G2"))
    rng = np.random.default_rng(7)
    for _ in range(20):
        v = rng.integers(-5, 6, size=2)
        if not np.any(v):
            continue
        q = float(v @ rs.B_f @ v)
        assert q > 0


def test_invalid_rank_zero():
    with pytest.raises(DomainError):
        AlgebraSpec.parse("A0")
