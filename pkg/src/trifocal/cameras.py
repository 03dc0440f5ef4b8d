"""Cameras and the line-transfer construction of trifocal tensors.

A camera is a full-rank 3x4 matrix with exact entries.  A triple of
cameras produces a 3x3x3 tensor through signed 4x4 minors of the stacked
4x9 matrix (one row from each of the first two cameras, two rows from the
third).  ``transfer_geometric`` performs the synthetic projective
construction (back-project two image lines, intersect the planes, image
the space line into the third view); it is the oracle that pins down the
sign convention of the minor formula.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from . import linalg
from .tensor import Tensor333


class InvalidCameraError(ValueError):
    pass


class DegenerateConfigurationError(ValueError):
    pass


class DegenerateTransferError(ValueError):
    pass


class Camera:
    __slots__ = ("m",)

    def __init__(self, m):
        rows, cols = linalg.dims(m)
        if (rows, cols) != (3, 4):
            raise InvalidCameraError("camera must be 3x4, got %dx%d" % (rows, cols))
        self.m = [list(r) for r in m]

    def rank(self):
        return linalg.rank(self.m)

    def row(self, i):
        return self.m[i]

    def __eq__(self, other):
        return isinstance(other, Camera) and self.m == other.m


def focal_point(a: Camera):
    """Kernel of the camera matrix: the center of projection in P^3."""
    if a.rank() != 3:
        raise InvalidCameraError("camera is rank-deficient")
    ker = linalg.kernel_basis(a.m)
    return ker[0]


def _proportional(u, v):
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] * v[j] - u[j] * v[i] != 0:
                return False
    return True


class CameraTriple:
    def __init__(self, a1: Camera, a2: Camera, a3: Camera):
        for a in (a1, a2, a3):
            if a.rank() != 3:
                raise DegenerateConfigurationError("rank-deficient camera in triple")
        f1, f2, f3 = focal_point(a1), focal_point(a2), focal_point(a3)
        if (_proportional(f1, f2) or _proportional(f1, f3) or _proportional(f2, f3)):
            raise DegenerateConfigurationError("two cameras share a focal point")
        stacked = [[a.m[r][c] for a in (a1, a2, a3) for r in range(3)] for c in range(4)]
        if linalg.rank(stacked) != 4:
            raise DegenerateConfigurationError("stacked 4x9 camera matrix is rank-deficient")
        self.a1, self.a2, self.a3 = a1, a2, a3

    def cameras(self):
        return (self.a1, self.a2, self.a3)


# sign pairing a C-index k with the complementary ordered pair of third-camera rows
_COMPLEMENT = {0: ((1, 2), 1), 1: ((0, 2), -1), 2: ((0, 1), 1)}


def trifocal_from_cameras(ct: CameraTriple) -> Tensor333:
    """T_ijk = sign(k) * det of [row i of A1; row j of A2; the two rows of A3
    complementary to k].  Defined up to a global scale."""
    a1, a2, a3 = ct.cameras()
    t = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for k in range(3):
        (c, d), sign = _COMPLEMENT[k]
        for i in range(3):
            for j in range(3):
                m = [a1.row(i), a2.row(j), a3.row(c), a3.row(d)]
                t[i][j][k] = sign * linalg.det(m)
    out = Tensor333(t)
    if out.is_zero():
        raise DegenerateConfigurationError("camera triple produced the zero tensor")
    return out


def _cross(x, y):
    return [x[1] * y[2] - x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0]]


def transfer_geometric(ct: CameraTriple, l1, l2):
    """Map a line pair (view 1, view 2) to the induced line in view 3.

    Back-projected planes pi_i = Ai^T li must be independent and the
    resulting space line must avoid the third focal point.
    """
    a1, a2, a3 = ct.cameras()
    pi1 = [sum(a1.m[r][c] * l1[r] for r in range(3)) for c in range(4)]
    pi2 = [sum(a2.m[r][c] * l2[r] for r in range(3)) for c in range(4)]
    ker = linalg.kernel_basis([pi1, pi2])
    if len(ker) != 2:
        raise DegenerateTransferError("back-projected planes are dependent")
    p, q = ker
    x = linalg.mat_vec(a3.m, p)
    y = linalg.mat_vec(a3.m, q)
    l3 = _cross(x, y)
    if all(v == 0 for v in l3):
        raise DegenerateTransferError("transferred line is undefined (through the focal point)")
    return l3


def random_camera(rng: random.Random, bound=9, max_tries=100) -> Camera:
    for _ in range(max_tries):
        m = [[rng.randint(-bound, bound) for _ in range(4)] for _ in range(3)]
        if linalg.rank(m) == 3:
            return Camera(m)
    raise RuntimeError("could not sample a full-rank camera")


def random_triple(rng: random.Random, bound=9, max_tries=100) -> CameraTriple:
    for _ in range(max_tries):
        try:
            return CameraTriple(random_camera(rng, bound),
                                random_camera(rng, bound),
                                random_camera(rng, bound))
        except DegenerateConfigurationError:
            continue
    raise RuntimeError("could not sample a valid camera triple")


# --- (de)serialization ------------------------------------------------------

def _scalar_from_json(x):
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    return int(x)


def camera_from_json_obj(data) -> Camera:
    if not isinstance(data, list) or len(data) != 3 or any(len(r) != 4 for r in data):
        raise ValueError("camera JSON must be a 3x4 nested array")
    return Camera([[ _scalar_from_json(x) for x in row] for row in data])


def triple_from_json(text: str) -> CameraTriple:
    data = json.loads(text)
    try:
        a1 = camera_from_json_obj(data["A1"])
        a2 = camera_from_json_obj(data["A2"])
        a3 = camera_from_json_obj(data["A3"])
    except (KeyError, TypeError) as exc:
        raise ValueError("camera triple JSON needs keys A1, A2, A3") from exc
    return CameraTriple(a1, a2, a3)
