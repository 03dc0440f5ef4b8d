import random
from fractions import Fraction

import pytest

from trifocal import linalg
from trifocal.orbits import skew_tensor, sub_generic, trifocal_normal_form, trifocal_slices_form
from trifocal.poly import m3_with_x_monomials
from trifocal.tensor import (Tensor333, act, contract, flattening, frank, pencil,
                             pencil_det, permute_factors, prank,
                             random_group_element, random_orbit_point, slice_of,
                             tensor_from_json, tensor_to_json)


def test_slice_of_slices_form():
    t = trifocal_slices_form()
    assert slice_of(t, "C", 1) == [[0, -1, 0], [0, 0, 0], [1, 0, 0]]
    assert slice_of(t, "C", 2) == [[0, 0, 0], [0, -1, 0], [0, 1, 0]]
    assert slice_of(t, "C", 3) == [[0, 0, 0], [0, 0, 0], [0, -1, 1]]


def test_slice_zero_and_errors():
    z = Tensor333.zero()
    for ax in "ABC":
        for s in (1, 2, 3):
            assert slice_of(z, ax, s) == [[0] * 3 for _ in range(3)]
    with pytest.raises(ValueError):
        slice_of(z, "A", 0)
    with pytest.raises(ValueError):
        slice_of(z, "D", 1)


def test_slice_rank_one():
    u, v, w = [1, 2, 3], [4, 5, 6], [7, 8, 9]
    t = Tensor333.rank_one(u, v, w)
    for i in (1, 2, 3):
        expected = [[u[i - 1] * v[j] * w[k] for k in range(3)] for j in range(3)]
        assert slice_of(t, "A", i) == expected


def test_flattening_rows_are_vectorized_slices():
    t = trifocal_normal_form()
    for ax in "ABC":
        fl = flattening(t, ax)
        for s in (1, 2, 3):
            sl = slice_of(t, ax, s)
            assert fl[s - 1] == [sl[r][c] for r in range(3) for c in range(3)]
    assert flattening(Tensor333.zero(), "A") == [[0] * 9 for _ in range(3)]


def test_flattening_of_skew_tensor():
    t = skew_tensor()
    fl = flattening(t, "A")
    e = lambda r, c: [1 if (rr, cc) == (r, c) else 0 for rr in range(3) for cc in range(3)]
    sub = lambda x, y: [a - b for a, b in zip(x, y)]
    assert fl[0] == sub(e(1, 2), e(2, 1))
    assert fl[1] == sub(e(2, 0), e(0, 2))
    assert fl[2] == sub(e(0, 1), e(1, 0))
    assert linalg.rank(fl) == 3


def test_frank_examples():
    assert frank(trifocal_normal_form()) == (3, 3, 3)
    assert frank(trifocal_slices_form()) == (3, 3, 3)
    assert frank(Tensor333.zero()) == (0, 0, 0)
    assert frank(sub_generic((2, 3, 3), seed=3)) == (2, 3, 3)


def test_pencil_of_normal_form():
    t = trifocal_normal_form()
    slices = pencil(t, "C")
    # x1*S1 + x2*S2 + x3*S3 == [[0,c1,0],[0,c2,0],[c1,0,c3]]
    expected = {(0, 1): [1, 0, 0], (1, 1): [0, 1, 0], (2, 0): [1, 0, 0], (2, 2): [0, 0, 1]}
    for r in range(3):
        for c in range(3):
            coeffs = [slices[s][r][c] for s in range(3)]
            assert coeffs == expected.get((r, c), [0, 0, 0])


def test_pencil_of_skew_tensor():
    slices = pencil(skew_tensor(), "A")
    # [[0, x3, -x2], [-x3, 0, x1], [x2, -x1, 0]]
    expected = {(0, 1): [0, 0, 1], (0, 2): [0, -1, 0],
                (1, 0): [0, 0, -1], (1, 2): [1, 0, 0],
                (2, 0): [0, 1, 0], (2, 1): [-1, 0, 0]}
    for r in range(3):
        for c in range(3):
            assert [slices[s][r][c] for s in range(3)] == expected.get((r, c), [0, 0, 0])
    assert pencil(Tensor333.zero(), "B") == [[[0] * 3 for _ in range(3)] for _ in range(3)]


def test_prank_examples():
    assert prank(trifocal_normal_form()) == (3, 3, 2)
    assert prank(trifocal_slices_form()) == (3, 3, 2)
    assert prank(skew_tensor()) == (2, 2, 2)
    assert prank(Tensor333.zero()) == (0, 0, 0)


def test_pencil_rank_one():
    t = Tensor333.from_terms([(1, 1, 1, 1)])
    assert prank(t) == (1, 1, 1)


def test_act_identity_and_scaling():
    t = trifocal_normal_form()
    ident = (linalg.identity(3), linalg.identity(3), linalg.identity(3))
    assert act(ident, t) == t
    a, b, c = 2, 3, 5
    g = ([[a, 0, 0], [0, a, 0], [0, 0, a]],
         [[b, 0, 0], [0, b, 0], [0, 0, b]],
         [[c, 0, 0], [0, c, 0], [0, 0, c]])
    assert act(g, t) == t.scale(a * b * c)


def test_act_rejects_singular():
    t = trifocal_normal_form()
    g = ([[1, 0, 0], [0, 1, 0], [1, 1, 0]], linalg.identity(3), linalg.identity(3))
    with pytest.raises(ValueError):
        act(g, t)


def test_act_is_a_group_action():
    rng = random.Random(11)
    t = trifocal_normal_form()
    for _ in range(5):
        g = random_group_element(rng, bound=3)
        h = random_group_element(rng, bound=3)
        gh = tuple(linalg.mat_mul(gm, hm) for gm, hm in zip(g, h))
        assert act(gh, t) == act(g, act(h, t))


@pytest.mark.parametrize("nf,expected_prank", [
    (trifocal_normal_form(), (3, 3, 2)),
    (skew_tensor(), (2, 2, 2)),
])
def test_rank_invariance_under_action(nf, expected_prank):
    rng = random.Random(12)
    fr = frank(nf)
    for _ in range(100):
        g = random_group_element(rng, bound=4)
        moved = act(g, nf, check=False)
        assert prank(moved) == expected_prank
        assert frank(moved) == fr


def test_prank_c_detects_exactly_the_cubic_vanishing():
    rng = random.Random(13)
    cases = [trifocal_normal_form(), skew_tensor(), Tensor333.zero()]
    for _ in range(10):
        cases.append(Tensor333([[[rng.randint(-4, 4) for _ in range(3)]
                                 for _ in range(3)] for _ in range(3)]))
    for t in cases:
        det_coeffs = pencil_det(pencil(t, "C"))
        assert (prank(t)[2] < 3) == (not det_coeffs)
        # the symbolic det coefficients are the evaluated cubic generators
        for e, f in m3_with_x_monomials("C"):
            assert f.evaluate(t) == det_coeffs.get(e, 0)


def test_contract_bilinear_and_rank_one():
    t = trifocal_normal_form()
    assert contract(t, [0, 0, 0], [1, 2, 3]) == [0, 0, 0]
    u, v, w = [1, -2, 3], [0, 1, 4], [2, 5, -1]
    up, vp = [3, 1, 1], [-1, 2, 0]
    t1 = Tensor333.rank_one(u, v, w)
    du = sum(a * b for a, b in zip(u, up))
    dv = sum(a * b for a, b in zip(v, vp))
    assert contract(t1, up, vp) == [du * dv * x for x in w]


def test_contract_equivariance():
    rng = random.Random(14)
    t = trifocal_normal_form()
    for _ in range(10):
        g = random_group_element(rng, bound=3)
        u = [rng.randint(-5, 5) for _ in range(3)]
        v = [rng.randint(-5, 5) for _ in range(3)]
        lhs = contract(act(g, t, check=False), u, v)
        gat, gbt, gct = (linalg.transpose(m) for m in g)
        inner = contract(t, linalg.mat_vec(gat, u), linalg.mat_vec(gbt, v))
        assert lhs == linalg.mat_vec(g[2], inner)


def test_random_orbit_point_deterministic():
    nf = trifocal_normal_form()
    assert random_orbit_point(nf, 5) == random_orbit_point(nf, 5)
    assert random_orbit_point(nf, 5) != random_orbit_point(nf, 6)
    assert random_orbit_point(Tensor333.zero(), 5) == Tensor333.zero()
    assert prank(random_orbit_point(nf, 77)) == (3, 3, 2)


def test_permute_factors_cycles():
    t = trifocal_normal_form()
    assert permute_factors(t, 3) == t
    s = permute_factors(t, 1)
    pr = prank(t)
    assert prank(s) == (pr[2], pr[0], pr[1])


def test_slice_reassembly_roundtrip():
    t = trifocal_slices_form()
    rebuilt_a = Tensor333([[[slice_of(t, "A", i + 1)[j][k] for k in range(3)]
                            for j in range(3)] for i in range(3)])
    rebuilt_b = Tensor333([[[slice_of(t, "B", j + 1)[i][k] for k in range(3)]
                            for j in range(3)] for i in range(3)])
    rebuilt_c = Tensor333([[[slice_of(t, "C", k + 1)[i][j] for k in range(3)]
                            for j in range(3)] for i in range(3)])
    assert rebuilt_a == rebuilt_b == rebuilt_c == t
    # and the pencil coefficient matrices are exactly the slices
    for ax in "ABC":
        assert pencil(t, ax) == [slice_of(t, ax, s) for s in (1, 2, 3)]


def test_json_roundtrip():
    t = trifocal_normal_form()
    assert tensor_from_json(tensor_to_json(t)) == t
    q = Tensor333([[[Fraction(1, 2) if (i, j, k) == (0, 0, 0) else 0
                     for k in range(3)] for j in range(3)] for i in range(3)])
    assert tensor_from_json(tensor_to_json(q)) == q
    with pytest.raises(ValueError):
        tensor_from_json("[[1,2],[3,4]]")
    with pytest.raises(ValueError):
        tensor_from_json(tensor_to_json(t).replace("1", "1.5", 1))
