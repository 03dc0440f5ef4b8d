"""Sparse polynomials in the 27 tensor coordinates T_ijk.

A monomial is a sorted tuple of variable indices (with multiplicity),
where variable (i,j,k) has index 9i+3j+k, all 0-based.  A polynomial is a
dict from monomials to nonzero exact coefficients.  Every polynomial we
care about is weight-homogeneous: the triple of index contents
(A-content, B-content, C-content) is the same for all monomials.

The letter aliases follow a_ij = T[i][j][1], b_ij = T[i][j][2],
c_ij = T[i][j][3] in 1-based notation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import gcd

from .scalars import Fp
from .tensor import Tensor333

N_VARS = 27


def var_index(i, j, k) -> int:
    """0-based (i,j,k) -> flat variable index."""
    return 9 * i + 3 * j + k


def var_ijk(v: int):
    return (v // 9, (v % 9) // 3, v % 3)


def var_name(v: int) -> str:
    i, j, k = var_ijk(v)
    return "T_%d_%d_%d" % (i + 1, j + 1, k + 1)


def mono_mul(m1, m2):
    return tuple(sorted(m1 + m2))


def mono_weight(mono):
    """((A-content), (B-content), (C-content)) of a monomial."""
    wa = [0, 0, 0]
    wb = [0, 0, 0]
    wc = [0, 0, 0]
    for v in mono:
        i, j, k = var_ijk(v)
        wa[i] += 1
        wb[j] += 1
        wc[k] += 1
    return (tuple(wa), tuple(wb), tuple(wc))


class Poly:
    """Sparse exact polynomial; never stores zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, coeff in (terms.items() if isinstance(terms, dict) else terms):
                self.add_term(mono, coeff)

    @classmethod
    def variable(cls, i, j, k, one_based=False):
        if one_based:
            i, j, k = i - 1, j - 1, k - 1
        return cls({(var_index(i, j, k),): 1})

    @classmethod
    def constant(cls, c):
        return cls({(): c}) if c != 0 else cls()

    def add_term(self, mono, coeff):
        if coeff == 0:
            return
        mono = tuple(mono)
        acc = self.terms.get(mono, 0) + coeff
        if acc == 0:
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = acc

    def copy(self):
        p = Poly()
        p.terms = dict(self.terms)
        return p

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __add__(self, other):
        p = self.copy()
        for m, c in other.terms.items():
            p.add_term(m, c)
        return p

    def __sub__(self, other):
        p = self.copy()
        for m, c in other.terms.items():
            p.add_term(m, -c)
        return p

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def scale(self, c):
        if c == 0:
            return Poly()
        return Poly({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out = Poly()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out.add_term(mono_mul(m1, m2), c1 * c2)
        return out

    __rmul__ = __mul__

    def degree(self):
        """Common degree of the monomials; None for the zero polynomial,
        an error if the polynomial is not homogeneous."""
        degs = {len(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def weight(self):
        """The common weight; raises if the polynomial mixes weights."""
        ws = {mono_weight(m) for m in self.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError("polynomial is not weight-homogeneous")
        return ws.pop()

    def evaluate(self, t: Tensor333):
        flat = t.entries_flat()
        has_fp = any(isinstance(x, Fp) for x in flat)
        has_q = any(isinstance(x, Fraction) for x in flat)
        coeff_fp = any(isinstance(c, Fp) for c in self.terms.values())
        coeff_q = any(isinstance(c, Fraction) for c in self.terms.values())
        if (has_fp and coeff_q) or (has_q and coeff_fp):
            raise ValueError("scalar field mismatch between polynomial and tensor")
        total = 0
        for mono, coeff in self.terms.items():
            v = coeff
            for idx in mono:
                v = v * flat[idx]
            total = total + v
        return total

    def derivative(self, v: int):
        out = Poly()
        for mono, coeff in self.terms.items():
            e = mono.count(v)
            if e == 0:
                continue
            reduced = list(mono)
            reduced.remove(v)
            out.add_term(tuple(reduced), coeff * e)
        return out

    def content_normalized(self):
        """Integer-coefficient scale with content 1 and positive leading
        coefficient (graded-lex leading monomial)."""
        if not self.terms:
            return Poly()
        den = 1
        for c in self.terms.values():
            f = Fraction(c)
            den = den * f.denominator // gcd(den, f.denominator)
        ints = {m: int(Fraction(c) * den) for m, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, abs(c))
        if g > 1:
            ints = {m: c // g for m, c in ints.items()}
        lead = min(ints)
        if ints[lead] < 0:
            ints = {m: -c for m, c in ints.items()}
        return Poly(ints)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)


# ---------------------------------------------------------------------------
# torus weights, weight spaces

def weight_space_basis(d, weight):
    """All degree-d monomials with the given (A,B,C) index contents.

    Monomials correspond to 3x3x3 nonnegative integer arrays whose three
    axis marginals are the content vectors.
    """
    wa, wb, wc = weight
    if not (sum(wa) == sum(wb) == sum(wc) == d):
        raise ValueError("weight %r does not sum to degree %d in every slot" % (weight, d))
    cells = [(i, j, k) for i in range(3) for j in range(3) for k in range(3)]
    out = []

    def rec(idx, ra, rb, rc, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        if idx == len(cells):
            return
        i, j, k = cells[idx]
        cap = min(ra[i], rb[j], rc[k], left)
        v = var_index(i, j, k)
        for e in range(cap + 1):
            if e:
                ra[i] -= 1; rb[j] -= 1; rc[k] -= 1
                acc.append(v)
            rec(idx + 1, ra, rb, rc, left - e, acc)
        for _ in range(cap):
            ra[i] += 1; rb[j] += 1; rc[k] += 1
            acc.pop()
    rec(0, list(wa), list(wb), list(wc), d, [])
    return sorted(out)


def monomials_of_degree(d):
    return combinations_with_replacement(range(N_VARS), d)


# ---------------------------------------------------------------------------
# raising / lowering operators (one gl(3) copy per tensor factor)

def apply_shift(axis, to_idx, from_idx, f: Poly) -> Poly:
    """The derivation sum_rest T[to,rest] * d/dT[from,rest] on poly f
    (indices 0-based within the chosen factor)."""
    ax = {"A": 0, "B": 1, "C": 2}[axis]
    out = Poly()
    for mono, coeff in f.terms.items():
        seen = set()
        for pos, v in enumerate(mono):
            if v in seen:
                continue
            seen.add(v)
            ijk = list(var_ijk(v))
            if ijk[ax] != from_idx:
                continue
            mult = mono.count(v)
            ijk[ax] = to_idx
            w = var_index(*ijk)
            new = list(mono)
            new.remove(v)
            new.append(w)
            out.add_term(tuple(sorted(new)), coeff * mult)
    return out


def lower(axis, r, s, f: Poly) -> Poly:
    """Lowering: moves one unit of `axis` content from slot s to slot r
    (1-based, r > s moves the weight down in dominance order)."""
    return apply_shift(axis, r - 1, s - 1, f)


def raise_op(axis, r, s, f: Poly) -> Poly:
    """Raising: the transposed index pair (moves content from r up to s)."""
    return apply_shift(axis, s - 1, r - 1, f)


LOWERING = tuple((ax, to, frm) for ax in "ABC" for to, frm in ((1, 0), (2, 1)))
RAISING = tuple((ax, to, frm) for ax in "ABC" for to, frm in ((0, 1), (1, 2)))


def apply_all(ops, f: Poly):
    return [apply_shift(ax, to, frm, f) for ax, to, frm in ops]


def is_highest_weight(f: Poly) -> bool:
    return all(g.is_zero() for g in apply_all(RAISING, f))


# ---------------------------------------------------------------------------
# the degree-3 pencil determinant coefficients

_X_MONOMIALS = [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
                (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3)]


def _pencil_entry_vars(axis, r, c):
    """Variable indices of the three x-coefficients of pencil entry (r,c)."""
    if axis == "A":
        return [var_index(s, r, c) for s in range(3)]
    if axis == "B":
        return [var_index(r, s, c) for s in range(3)]
    if axis == "C":
        return [var_index(r, c, s) for s in range(3)]
    raise ValueError("axis must be A, B or C")


def m3_with_x_monomials(axis):
    """The symbolic pencil determinant for an axis, split by x-monomial:
    list of ((e1,e2,e3), Poly) with e the exponent of (x1,x2,x3)."""
    buckets = {e: Poly() for e in _X_MONOMIALS}
    for sigma in permutations(range(3)):
        sign = 1
        for a in range(3):
            for b in range(a + 1, 3):
                if sigma[a] > sigma[b]:
                    sign = -sign
        for s1 in range(3):
            for s2 in range(3):
                for s3 in range(3):
                    e = [0, 0, 0]
                    e[s1] += 1; e[s2] += 1; e[s3] += 1
                    mono = tuple(sorted((_pencil_entry_vars(axis, 0, sigma[0])[s1],
                                         _pencil_entry_vars(axis, 1, sigma[1])[s2],
                                         _pencil_entry_vars(axis, 2, sigma[2])[s3])))
                    buckets[tuple(e)].add_term(mono, sign)
    return [(e, buckets[e]) for e in _X_MONOMIALS]


def m3_generators(axis):
    """The 10 homogeneous cubics: coefficients (on x-monomials) of the
    determinant of the axis pencil."""
    return [p for _, p in m3_with_x_monomials(axis)]


def s3_m3():
    """All 30 pencil-determinant cubics over the three axes."""
    out = []
    for ax in "ABC":
        out.extend(m3_generators(ax))
    return out


def det_slice_poly(axis, index):
    """det of a single 1-based coordinate slice as a cubic Poly
    (equals the x_index^3 coefficient of the axis pencil determinant)."""
    out = Poly()
    for sigma in permutations(range(3)):
        sign = 1
        for a in range(3):
            for b in range(a + 1, 3):
                if sigma[a] > sigma[b]:
                    sign = -sign
        mono = tuple(sorted(_pencil_entry_vars(axis, r, sigma[r])[index - 1]
                            for r in range(3)))
        out.add_term(mono, sign)
    return out


def f_determinant():
    """det [[a11,a12,a13],[b11,b12,b13],[c11,c12,c13]]: the x1^3
    coefficient of the A-axis pencil determinant, a highest weight vector
    of weight ((3,0,0),(1,1,1),(1,1,1))."""
    return det_slice_poly("A", 1)


# ---------------------------------------------------------------------------
# text / JSON formats

def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for mono in sorted(f.terms, key=lambda m: (-len(m), m)):
        coeff = f.terms[mono]
        factors = []
        seen = []
        for v in mono:
            if v in seen:
                continue
            seen.append(v)
            e = mono.count(v)
            factors.append(var_name(v) + ("^%d" % e if e > 1 else ""))
        body = "*".join(factors) if factors else "1"
        c = Fraction(coeff) if not isinstance(coeff, Fp) else coeff
        if c == 1 and factors:
            parts.append("+ " + body)
        elif c == -1 and factors:
            parts.append("- " + body)
        else:
            sign = "- " if (not isinstance(c, Fp) and c < 0) else "+ "
            mag = -c if (not isinstance(c, Fp) and c < 0) else c
            parts.append(sign + str(mag) + "*" + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def _parse_var(token: str) -> int:
    token = token.strip()
    if token.startswith("T"):
        bits = token.split("_")
        if len(bits) != 4:
            raise ValueError("bad variable %r" % token)
        i, j, k = (int(b) for b in bits[1:])
        return var_index(i - 1, j - 1, k - 1)
    letter, digits = token[0], token[1:]
    if letter in "abc" and len(digits) == 2 and digits.isdigit():
        i, j = int(digits[0]), int(digits[1])
        k = "abc".index(letter) + 1
        return var_index(i - 1, j - 1, k - 1)
    raise ValueError("bad variable %r" % token)


def parse_poly(text: str) -> Poly:
    """Parse 'c*T_1_2_3^2*a11 - ...' (T_i_j_k or letter a/b/c names)."""
    text = text.replace("-", "+-").replace(" ", "").replace("\n", "")
    out = Poly()
    for chunk in text.split("+"):
        if not chunk:
            continue
        coeff = 1
        if chunk.startswith("-"):
            coeff = -1
            chunk = chunk[1:]
        mono = []
        for factor in chunk.split("*"):
            if not factor:
                continue
            base, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if base.replace("/", "").lstrip("-").isdigit():
                num, _, den = base.partition("/")
                c = Fraction(int(num), int(den)) if den else int(num)
                coeff = coeff * c ** e
            else:
                mono.extend([_parse_var(base)] * e)
        out.add_term(tuple(sorted(mono)), coeff)
    return out


def poly_to_json_terms(f: Poly):
    out = []
    for mono in sorted(f.terms, key=lambda m: (-len(m), m)):
        c = f.terms[mono]
        cf = Fraction(c)
        cval = int(cf) if cf.denominator == 1 else "%d/%d" % (cf.numerator, cf.denominator)
        out.append({"coeff": cval, "vars": [list(x + 1 for x in var_ijk(v)) for v in mono]})
    return out


def poly_from_json_terms(terms) -> Poly:
    out = Poly()
    for term in terms:
        c = term["coeff"]
        if isinstance(c, str):
            num, _, den = c.partition("/")
            c = Fraction(int(num), int(den)) if den else int(num)
        mono = tuple(sorted(var_index(i - 1, j - 1, k - 1) for i, j, k in term["vars"]))
        out.add_term(mono, c)
    return out


def witness_g() -> Poly:
    """The shipped degree-4 highest weight witness polynomial (loaded from
    the data file; weight ((2,2,0),(2,1,1),(2,1,1)))."""
    from importlib.resources import files
    text = files("trifocal").joinpath("data/witness_g.txt").read_text()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    return parse_poly("".join(lines))
