"""Symmetric-group characters, Kronecker multiplicities and highest
weight spaces.

Partitions are weakly decreasing tuples of positive ints.  A label is a
triple of partitions of the same degree; it names the GL(3)^3-module
S_lam(A) x S_mu(B) x S_nu(C*) inside the degree-d coordinate ring.  The
multiplicity of a label is the Kronecker coefficient, computed from S_d
characters via the Murnaghan-Nakayama rule; the matching highest weight
space is realized concretely as the joint kernel of the six raising
operators on one torus weight space.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

from . import linalg, poly
from .poly import LOWERING, RAISING, Poly, apply_shift

MAX_DEGREE = 9  # the search bound: no new generators exist above this


class ConsistencyError(ArithmeticError):
    """A representation-theoretic cross-check failed (convention bug)."""


@lru_cache(maxsize=None)
def partitions(d, max_part=None):
    """All partitions of d as weakly decreasing tuples."""
    if max_part is None:
        max_part = d
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_max_parts(d, max_parts):
    return tuple(p for p in partitions(d) if len(p) <= max_parts)


def class_size(cls) -> int:
    d = sum(cls)
    z = 1
    mult = {}
    for part in cls:
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part ** m * factorial(m)
    return factorial(d) // z


@lru_cache(maxsize=None)
def mn_character(lam, cls) -> int:
    """Character of the irreducible S_d module lam on cycle type cls,
    by border-strip removal on the beta set."""
    if sum(lam) != sum(cls):
        raise ValueError("partition %r and class %r have different sizes" % (lam, cls))
    if not cls:
        return 1
    ell = cls[0]
    rest = tuple(cls[1:])
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - ell
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        newbeta = sorted((x for x in beta if x != b), reverse=True)
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        newlam = tuple(x - (n - 1 - i) for i, x in enumerate(newbeta))
        newlam = tuple(x for x in newlam if x > 0)
        term = mn_character(newlam, rest)
        total += -term if height % 2 else term
    return total


@lru_cache(maxsize=None)
def kronecker(lam, mu, nu) -> int:
    """Multiplicity of the label: (1/d!) sum over classes of
    |class| * chi_lam * chi_mu * chi_nu."""
    d = sum(lam)
    if not (sum(mu) == d and sum(nu) == d):
        raise ValueError("label %r has mixed sizes" % ((lam, mu, nu),))
    if d > MAX_DEGREE:
        raise ValueError("degree %d beyond the search bound %d" % (d, MAX_DEGREE))
    total = 0
    for cls in partitions(d):
        total += (class_size(cls) * mn_character(lam, cls)
                  * mn_character(mu, cls) * mn_character(nu, cls))
    if total % factorial(d) != 0:
        raise ConsistencyError("character sum for %r is not divisible by d!" % ((lam, mu, nu),))
    val = total // factorial(d)
    if val < 0:
        raise ConsistencyError("negative multiplicity for %r" % ((lam, mu, nu),))
    return val


def weyl_dim(lam) -> int:
    """dim S_lam(C^3) by the Weyl dimension formula."""
    if len(lam) > 3:
        raise ValueError("more than 3 parts: %r" % (lam,))
    l = tuple(lam) + (0,) * (3 - len(lam))
    num = (l[0] - l[1] + 1) * (l[1] - l[2] + 1) * (l[0] - l[2] + 2)
    return num // 2


def label_dim(label) -> int:
    lam, mu, nu = label
    return weyl_dim(lam) * weyl_dim(mu) * weyl_dim(nu)


def all_labels(d):
    """All ordered triples of partitions of d with at most 3 parts."""
    parts = partitions_max_parts(d, 3)
    return [(a, b, c) for a in parts for b in parts for c in parts]


def ambient_dimension(d) -> int:
    """dim of the degree-d coordinate ring of C^27."""
    from math import comb
    return comb(26 + d, d)


def completeness_defect(d) -> int:
    """Sum of kronecker * Weyl dims minus the ambient dimension (0 iff the
    isotypic bookkeeping is consistent)."""
    total = sum(kronecker(*lab) * label_dim(lab) for lab in all_labels(d))
    return total - ambient_dimension(d)


# ---------------------------------------------------------------------------
# highest weight spaces

def _pad(lam):
    return tuple(lam) + (0,) * (3 - len(lam))


class HWSpace:
    """Basis of the joint raising-operator kernel on one weight space."""

    __slots__ = ("label", "weight", "monomials", "basis")

    def __init__(self, label, weight, monomials, basis):
        self.label = label
        self.weight = weight
        self.monomials = monomials
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)


@lru_cache(maxsize=None)
def hw_space(label) -> HWSpace:
    """Highest weight space for a label, with exact integer basis vectors.

    The kernel dimension is asserted against the Kronecker coefficient;
    a mismatch raises ConsistencyError (it would indicate an operator
    convention bug, not bad input).
    """
    lam, mu, nu = label
    d = sum(lam)
    expected = kronecker(lam, mu, nu)
    weight = (_pad(lam), _pad(mu), _pad(nu))
    monomials = poly.weight_space_basis(d, weight)
    col = {m: i for i, m in enumerate(monomials)}
    rows = {}
    for ci, mono in enumerate(monomials):
        f = Poly({mono: 1})
        for op_id, (ax, to, frm) in enumerate(RAISING):
            img = apply_shift(ax, to, frm, f)
            for tmono, coeff in img.terms.items():
                rows.setdefault((op_id, tmono), {})[ci] = coeff
    try:
        vectors = linalg.kernel_basis_int(rows.values(), len(monomials),
                                          expected_dim=expected)
    except ArithmeticError as exc:
        raise ConsistencyError(
            "hw space of %r: %s" % (label, exc)) from exc
    basis = []
    for v in vectors:
        f = Poly({monomials[i]: c for i, c in enumerate(v) if c})
        basis.append(f.content_normalized())
    return HWSpace(label, weight, monomials, basis)


def module_span(h: Poly, p=101, fallback_prime=32003):
    """Basis of the irreducible module generated by a highest weight
    vector: close h under the six lowering operators.

    Independence is decided modulo p (a dependent-looking candidate is
    simply not added; completeness is enforced by comparing against the
    Weyl dimension product, retrying at a second prime if short).
    """
    w = h.weight()
    lam, mu, nu = (tuple(sorted(c, reverse=True)) for c in w)
    if (_pad(lam), _pad(mu), _pad(nu)) != w:
        raise ValueError("module_span needs a dominant-weight vector, got weight %r" % (w,))
    expected = weyl_dim(lam) * weyl_dim(mu) * weyl_dim(nu)
    for prime in (p, fallback_prime):
        basis = _close_under_lowering(h, prime, expected)
        if len(basis) == expected:
            return basis
    raise ConsistencyError(
        "module span of weight %r closed at %d elements, expected %d"
        % (w, len(basis), expected))


def _close_under_lowering(h, p, limit):
    echelon = {}  # pivot monomial -> reduced row (dict mono -> residue mod p)

    def try_add(f: Poly):
        row = {m: c % p for m, c in f.terms.items() if c % p}
        while row:
            lead = min(row)
            piv = echelon.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                row = {m: (c * inv) % p for m, c in row.items()}
                echelon[lead] = row
                return True
            factor = row[lead]
            for m, c in piv.items():
                acc = (row.get(m, 0) - factor * c) % p
                if acc:
                    row[m] = acc
                else:
                    row.pop(m, None)
        return False

    basis = []
    queue = [h.content_normalized()]
    try_add(queue[0])
    basis.append(queue[0])
    while queue and len(basis) < limit + 1:
        f = queue.pop()
        for ax, to, frm in LOWERING:
            img = apply_shift(ax, to, frm, f)
            if img.is_zero():
                continue
            if try_add(img):
                img = img.content_normalized()
                basis.append(img)
                queue.append(img)
    return basis
