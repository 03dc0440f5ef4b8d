import json
import random

import pytest

from trifocal import linalg
from trifocal.cameras import (Camera, CameraTriple, DegenerateConfigurationError,
                              DegenerateTransferError, InvalidCameraError,
                              focal_point, random_camera, random_triple,
                              transfer_geometric, trifocal_from_cameras,
                              triple_from_json)
from trifocal.tensor import act, contract, frank, prank


def proportional(u, v):
    if all(x == 0 for x in u) or all(x == 0 for x in v):
        return False
    n = len(u)
    return all(u[i] * v[j] - u[j] * v[i] == 0 for i in range(n) for j in range(i + 1, n))


def test_focal_point_identity_block():
    cam = Camera([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    f = focal_point(cam)
    assert proportional(f, [0, 0, 0, 1])


def test_focal_point_column_permutation():
    base = Camera([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    perm = [2, 0, 3, 1]  # new column c comes from old column perm[c]
    cam = Camera([[base.m[r][perm[c]] for c in range(4)] for r in range(3)])
    f0 = focal_point(base)
    f1 = focal_point(cam)
    assert [f1[c] for c in range(4)] == [f0[perm[c]] for c in range(4)]


def test_focal_point_exactness_and_rank_check():
    rng = random.Random(21)
    for _ in range(10):
        cam = random_camera(rng)
        f = focal_point(cam)
        assert any(x != 0 for x in f)
        assert linalg.mat_vec(cam.m, f) == [0, 0, 0]
    with pytest.raises(InvalidCameraError):
        focal_point(Camera([[1, 0, 0, 0], [2, 0, 0, 0], [3, 0, 0, 0]]))


def test_identical_cameras_rejected():
    rng = random.Random(22)
    a1 = random_camera(rng)
    a2 = random_camera(rng)
    with pytest.raises(DegenerateConfigurationError):
        CameraTriple(a1, a2, Camera([list(r) for r in a2.m]))


def test_camera_tensors_have_trifocal_ranks():
    rng = random.Random(23)
    for _ in range(15):
        t = trifocal_from_cameras(random_triple(rng))
        assert prank(t) == (3, 3, 2)
        assert frank(t) == (3, 3, 3)


def test_scaling_one_camera_scales_the_tensor():
    rng = random.Random(24)
    ct = random_triple(rng)
    t = trifocal_from_cameras(ct)
    scaled = CameraTriple(Camera([[3 * x for x in row] for row in ct.a1.m]), ct.a2, ct.a3)
    assert trifocal_from_cameras(scaled) == t.scale(3)


def test_camera_side_action_matches_tensor_action():
    rng = random.Random(25)
    ct = random_triple(rng)
    t = trifocal_from_cameras(ct)
    from trifocal.tensor import random_group_element
    g = random_group_element(rng, bound=3)
    moved = CameraTriple(Camera(linalg.mat_mul(g[0], ct.a1.m)),
                         Camera(linalg.mat_mul(g[1], ct.a2.m)),
                         ct.a3)
    assert trifocal_from_cameras(moved) == act((g[0], g[1], linalg.identity(3)), t)


def test_world_coordinate_change_scales_tensor():
    rng = random.Random(26)
    ct = random_triple(rng)
    t = trifocal_from_cameras(ct)
    while True:
        h = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
        dh = linalg.det(h)
        if dh != 0:
            break
    moved = CameraTriple(*(Camera(linalg.mat_mul(a.m, h)) for a in ct.cameras()))
    assert trifocal_from_cameras(moved) == t.scale(dh)


def test_transfer_is_proportional_to_contraction():
    """The convention-pinning oracle: geometric transfer vs tensor
    contraction, exact proportionality on 50 random line pairs."""
    rng = random.Random(27)
    checked = 0
    while checked < 50:
        ct = random_triple(rng)
        t = trifocal_from_cameras(ct)
        for _ in range(5):
            l1 = [rng.randint(-5, 5) for _ in range(3)]
            l2 = [rng.randint(-5, 5) for _ in range(3)]
            try:
                l3 = transfer_geometric(ct, l1, l2)
            except DegenerateTransferError:
                continue
            w = contract(t, l1, l2)
            assert proportional(w, l3)
            checked += 1


def test_transfer_from_world_line():
    rng = random.Random(28)
    ct = random_triple(rng)
    a1, a2, a3 = ct.cameras()
    # pick a world line through two points, image it, transfer it back
    for _ in range(20):
        p = [rng.randint(-4, 4) for _ in range(4)]
        q = [rng.randint(-4, 4) for _ in range(4)]
        x1, y1 = linalg.mat_vec(a1.m, p), linalg.mat_vec(a1.m, q)
        x2, y2 = linalg.mat_vec(a2.m, p), linalg.mat_vec(a2.m, q)
        cross = lambda x, y: [x[1] * y[2] - x[2] * y[1],
                              x[2] * y[0] - x[0] * y[2],
                              x[0] * y[1] - x[1] * y[0]]
        l1, l2 = cross(x1, y1), cross(x2, y2)
        if all(v == 0 for v in l1) or all(v == 0 for v in l2):
            continue
        try:
            l3 = transfer_geometric(ct, l1, l2)
        except DegenerateTransferError:
            continue
        x3, y3 = linalg.mat_vec(a3.m, p), linalg.mat_vec(a3.m, q)
        assert proportional(l3, cross(x3, y3))
        return
    pytest.fail("no usable world line found")


def test_transfer_degenerate_plane_pair():
    rng = random.Random(29)
    for _ in range(40):
        ct = random_triple(rng, bound=4)
        a1, a2 = ct.a1, ct.a2
        # find a plane in the intersection of the two back-projection images
        stacked = [[a1.m[r][c] for r in range(3)] + [-a2.m[r][c] for r in range(3)]
                   for c in range(4)]
        ker = linalg.kernel_basis(stacked)
        if not ker:
            continue
        v = ker[0]
        l1, l2 = list(v[:3]), list(v[3:])
        if all(x == 0 for x in l1) or all(x == 0 for x in l2):
            continue
        with pytest.raises(DegenerateTransferError):
            transfer_geometric(ct, l1, l2)
        return
    pytest.fail("no degenerate pair constructed")


def test_scaling_lines_keeps_output_line():
    # the output is a projective line: scaling an input rescales it
    rng = random.Random(30)
    ct = random_triple(rng)
    l1, l2 = [1, 2, -1], [3, 0, 1]
    out = transfer_geometric(ct, l1, l2)
    assert proportional(out, transfer_geometric(ct, [5 * x for x in l1], l2))
    assert proportional(out, transfer_geometric(ct, l1, [-7 * x for x in l2]))


def test_triple_from_json():
    rng = random.Random(31)
    ct = random_triple(rng)
    blob = json.dumps({"A1": ct.a1.m, "A2": ct.a2.m, "A3": ct.a3.m})
    parsed = triple_from_json(blob)
    assert trifocal_from_cameras(parsed) == trifocal_from_cameras(ct)
    with pytest.raises(ValueError):
        triple_from_json(json.dumps({"A1": ct.a1.m}))
    with pytest.raises(ValueError):
        triple_from_json(json.dumps({"A1": [[1, 2], [3, 4]], "A2": ct.a2.m, "A3": ct.a3.m}))
