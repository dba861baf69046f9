import numpy as np
import pytest

from crossrep.errors import InvariantViolation
from crossrep.groups import (
    FiniteGroup,
    S3_E,
    S3_ETA,
    S3_ETA2,
    S3_TAU,
    Subgroup,
    character_table,
    make_cyclic_group,
    make_symmetric_group_3,
    right_coset_reps,
    subgroup_closure,
)


def test_trivial_group():
    G = make_cyclic_group(1)
    assert G.order == 1 and G.identity == 0


def test_z2_table():
    G = make_cyclic_group(2)
    assert G.table.tolist() == [[0, 1], [1, 0]]


def test_z4_inverse():
    assert make_cyclic_group(4).inv(1) == 3


def test_s3_generator_relations():
    G = make_symmetric_group_3()
    assert G.mul(S3_TAU, S3_TAU) == S3_E
    assert G.power(S3_ETA, 3) == S3_E
    assert G.mul(G.mul(S3_TAU, S3_ETA), S3_TAU) == S3_ETA2


def test_s3_not_abelian_z_cyclic():
    assert not make_symmetric_group_3().is_abelian()
    assert make_cyclic_group(6).cyclic_generator() == 1
    assert make_symmetric_group_3().cyclic_generator() is None


def test_bad_tables_rejected():
    with pytest.raises(InvariantViolation):
        FiniteGroup([[0, 0], [1, 1]])  # not a Latin square
    # Latin square that is not associative (order-5 quasigroup)
    q = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(InvariantViolation):
        FiniteGroup(q)


def test_subgroup_validation():
    G = make_cyclic_group(4)
    with pytest.raises(InvariantViolation):
        Subgroup(G, (0, 1))  # not closed


def test_subgroup_closure_eta():
    G = make_symmetric_group_3()
    H = subgroup_closure(G, [S3_ETA])
    assert H.members == (S3_E, S3_ETA, S3_ETA2)
    assert right_coset_reps(H) == [S3_E, S3_TAU]


def test_subgroup_closure_trivial():
    G = make_symmetric_group_3()
    H = subgroup_closure(G, [S3_E])
    assert H.members == (S3_E,)
    assert right_coset_reps(H) == list(range(6))


def test_subgroup_closure_z4():
    G = make_cyclic_group(4)
    H = subgroup_closure(G, [2])
    assert H.members == (0, 2)
    assert right_coset_reps(H) == [0, 1]


@pytest.mark.parametrize(
    "group,gens",
    [
        (make_symmetric_group_3(), [S3_TAU]),
        (make_symmetric_group_3(), [S3_ETA, S3_TAU]),
        (make_cyclic_group(12), [8]),
        (make_cyclic_group(12), [9, 6]),
    ],
)
def test_coset_reps_tile_the_group(group, gens):
    H = subgroup_closure(group, gens)
    reps = right_coset_reps(H)
    assert len(reps) * H.order == group.order
    seen = set()
    for g in reps:
        coset = {group.mul(h, g) for h in H.members}
        assert not (coset & seen)
        seen |= coset
    assert seen == set(range(group.order))
    assert reps[0] == group.identity


def test_subgroup_as_group_regrounds_z2():
    G = make_cyclic_group(4)
    K, members = subgroup_closure(G, [2]).as_group()
    assert members == [0, 2]
    assert K.table.tolist() == [[0, 1], [1, 0]]


def test_character_table_z3_fourier_oracle(tol):
    # oracle: the characters of Z_3 are k -> w^(jk)
    ct = character_table(make_cyclic_group(3), seed=5, tol=tol)
    w = np.exp(2j * np.pi / 3)
    oracle = {tuple(np.round([w ** (j * k) for k in range(3)], 8)) for j in range(3)}
    got = {tuple(np.round(ct.char_vector(r), 8)) for r in range(ct.n_irreps)}
    assert got == oracle


def test_character_table_s3_oracle(tol):
    # hard-coded table: classes {e}, {eta, eta^2}, {tau, eta tau, eta^2 tau}
    ct = character_table(make_symmetric_group_3(), seed=5, tol=tol)
    assert ct.dims == [1, 1, 2]
    assert [c for c in ct.classes] == [(0,), (1, 2), (3, 4, 5)]
    oracle = {(1, 1, 1), (1, 1, -1), (2, -1, 0)}
    got = {
        tuple(int(round(z.real)) for z in ct.chars[r])
        for r in range(ct.n_irreps)
    }
    assert got == oracle
    assert np.max(np.abs(ct.chars.imag)) < 1e-8


def test_character_table_trivial_group(tol):
    ct = character_table(make_cyclic_group(1), seed=0, tol=tol)
    assert ct.dims == [1]
    assert abs(ct.chars[0, 0] - 1) < 1e-12


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("seed", [0, 99])
def test_character_table_invariants_cyclic(n, seed, tol):
    ct = character_table(make_cyclic_group(n), seed=seed, tol=tol)
    ct.validate(1e-8)
    assert sorted(ct.dims) == [1] * n


@pytest.mark.parametrize("seed", [0, 99])
def test_character_table_invariants_s3(seed, tol):
    character_table(make_symmetric_group_3(), seed=seed, tol=tol).validate(1e-8)


def test_character_table_seed_independent_content(tol):
    a = character_table(make_symmetric_group_3(), seed=1, tol=tol)
    b = character_table(make_symmetric_group_3(), seed=2, tol=tol)
    assert np.allclose(a.chars, b.chars, atol=1e-7)


def test_character_table_row_orthogonality_values(tol):
    # explicit statement: sum_r chi_r(g) conj(chi_r(h)) = |G|/C(g) on a class
    ct = character_table(make_symmetric_group_3(), seed=3, tol=tol)
    G = ct.group
    for g in range(6):
        for h in range(6):
            s = sum(ct.value(r, g) * np.conj(ct.value(r, h)) for r in range(3))
            same = ct.class_of[g] == ct.class_of[h]
            want = 6 / len(ct.classes[ct.class_of[g]]) if same else 0.0
            assert abs(s - want) < 1e-8


def test_validate_rejects_corrupted_table(tol):
    ct = character_table(make_symmetric_group_3(), seed=3, tol=tol)
    ct.chars = ct.chars.copy()
    ct.chars[0, 1] += 0.5
    with pytest.raises(InvariantViolation):
        ct.validate(1e-8)
