"""Finite-dimensional sl2 machinery: representation ring, characters,
Clebsch-Gordan singular vectors, and singular multiplicities of chain blocks.

Dominant weights are stored doubled (2w is a non-negative integer), so all
bookkeeping stays integral even for half-integer weights.  The same doubling
convention applies to the exponents of ``HalfLaurent``, the Laurent
polynomials in u^(1/2) that carry Weyl characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chains import (
    BlockBasis,
    adjoint_action,
    block_dim_table,
    enumerate_block,
    matrix_of,
    weight,
)
from .linalg import IntMatrix, bareiss_rank


class RepRingElement:
    """Element of the sl2 representation ring.

    A free Z-module on the simple modules, encoded as a map from doubled
    dominant weight to multiplicity; multiplication is the Clebsch-Gordan
    rule extended bilinearly.
    """

    __slots__ = ("mults",)

    def __init__(self, mults=None):
        m = {}
        if mults:
            for d, c in mults.items():
                if d < 0:
                    raise ValueError(f"negative doubled weight {d}")
                if c:
                    m[d] = c
        self.mults = m

    @classmethod
    def zero(cls) -> "RepRingElement":
        return cls()

    @classmethod
    def one(cls) -> "RepRingElement":
        return cls({0: 1})

    @classmethod
    def simple(cls, two_w: int) -> "RepRingElement":
        """Class of the simple module with doubled dominant weight ``two_w``."""
        return cls({two_w: 1})

    def __bool__(self):
        return bool(self.mults)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RepRingElement({0: other})
        return isinstance(other, RepRingElement) and self.mults == other.mults

    def __hash__(self):
        return hash(tuple(sorted(self.mults.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = RepRingElement({0: other})
        out = dict(self.mults)
        for d, c in other.mults.items():
            s = out.get(d, 0) + c
            if s:
                out[d] = s
            else:
                del out[d]
        return RepRingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return RepRingElement({d: -c for d, c in self.mults.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = RepRingElement({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RepRingElement({d: c * other for d, c in self.mults.items()})
        out: dict[int, int] = {}
        for d1, c1 in self.mults.items():
            for d2, c2 in other.mults.items():
                c = c1 * c2
                for d in range(abs(d1 - d2), d1 + d2 + 1, 2):
                    s = out.get(d, 0) + c
                    if s:
                        out[d] = s
                    else:
                        del out[d]
        return RepRingElement(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def dimension(self) -> int:
        """Total dimension of a module with these multiplicities."""
        return sum(c * (d + 1) for d, c in self.mults.items())

    def mult(self, two_w: int) -> int:
        return self.mults.get(two_w, 0)

    def __repr__(self):
        if not self.mults:
            return "RepRing(0)"
        parts = []
        for d in sorted(self.mults):
            wtxt = str(d // 2) if d % 2 == 0 else f"{d}/2"
            parts.append(f"{self.mults[d]}*z^{wtxt}")
        return "RepRing(" + " + ".join(parts) + ")"


def rep_mul(x: RepRingElement, y: RepRingElement) -> RepRingElement:
    """Clebsch-Gordan product in the representation ring."""
    return x * y


# ---------------------------------------------------------------------------
# Laurent polynomials in u^(1/2)

class HalfLaurent:
    """Laurent polynomial in u^(1/2): map doubled exponent -> int."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {e: v for e, v in (coeffs or {}).items() if v}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def u_power(cls, doubled_exp: int, coeff: int = 1):
        return cls({doubled_exp: coeff})

    @classmethod
    def bracket(cls, a: int) -> "HalfLaurent":
        """[a]_u = u^((a-1)/2) + u^((a-3)/2) + ... + u^(-(a-1)/2), a >= 0."""
        if a < 0:
            raise ValueError("bracket takes a non-negative integer")
        return cls({e: 1 for e in range(-(a - 1), a, 2)})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        return isinstance(other, HalfLaurent) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        out = dict(self.c)
        for e, v in other.c.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                del out[e]
        return HalfLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfLaurent({e: v * other for e, v in self.c.items()})
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                s = out.get(e, 0) + v1 * v2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return HalfLaurent(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def substitute_neg_u(self) -> "HalfLaurent":
        """u -> -u; defined for integer exponents only."""
        out = {}
        for e, v in self.c.items():
            if e % 2:
                raise ValueError("u -> -u needs integer exponents")
            out[e] = -v if (e // 2) % 2 else v
        return HalfLaurent(out)

    def eval_at_one(self) -> int:
        return sum(self.c.values())

    def __repr__(self):
        if not self.c:
            return "HalfLaurent(0)"
        parts = []
        for e in sorted(self.c, reverse=True):
            etxt = str(e // 2) if e % 2 == 0 else f"{e}/2"
            parts.append(f"{self.c[e]}*u^{etxt}")
        return "HalfLaurent(" + " + ".join(parts) + ")"


def weyl_map(x: RepRingElement) -> HalfLaurent:
    """Character map: the simple module of doubled weight d goes to [d+1]_u.

    A ring isomorphism onto the span of the brackets.
    """
    out = HalfLaurent.zero()
    for d, c in x.mults.items():
        out = out + HalfLaurent.bracket(d + 1) * c
    return out


def weyl_inverse(p: HalfLaurent) -> RepRingElement:
    """Inverse of weyl_map by triangular stripping from the top exponent.

    Raises when the input is not an integer combination of brackets.
    """
    rem = HalfLaurent(dict(p.c))
    mults: dict[int, int] = {}
    while rem:
        top = max(rem.c)
        if top < 0:
            raise ValueError("not in the bracket span (negative support left)")
        c = rem.c[top]
        mults[top] = mults.get(top, 0) + c
        rem = rem - HalfLaurent.bracket(top + 1) * c
    return RepRingElement(mults)


# ---------------------------------------------------------------------------
# abstract simple modules and the Clebsch-Gordan singular vectors

class SimpleModule:
    """Model of the simple sl2-module with doubled dominant weight 2w.

    Basis v_0 .. v_{2w} with v_p the p-fold lowering of the singular vector:
    e_0 v_p = (w - p) v_p, e_{-1} v_p = v_{p+1}, e_1 v_p = p (2w - p + 1)/2 v_{p-1}.
    """

    def __init__(self, two_w: int):
        if two_w < 0:
            raise ValueError("doubled weight must be non-negative")
        self.two_w = two_w
        self.dim = two_w + 1

    def act(self, g: int, p: int):
        """Action on a basis vector; returns (coefficient, index) or None."""
        if g == 0:
            c = Fraction(self.two_w - 2 * p, 2)
            return (c, p) if c else None
        if g == -1:
            return (Fraction(1), p + 1) if p + 1 <= self.two_w else None
        if g == 1:
            if p == 0:
                return None
            return (Fraction(p * (self.two_w - p + 1), 2), p - 1)
        raise ValueError("generator must be -1, 0 or 1")


def _tensor_apply(g: int, vec: dict, m1: SimpleModule, m2: SimpleModule) -> dict:
    out: dict = {}
    for (p1, p2), c in vec.items():
        for mod, slot in ((m1, 0), (m2, 1)):
            im = mod.act(g, p1 if slot == 0 else p2)
            if im is None:
                continue
            coeff, np_ = im
            key = (np_, p2) if slot == 0 else (p1, np_)
            s = out.get(key, 0) + c * coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def cg_singular_vector(w1, w2, p: int) -> list[Fraction]:
    """Coefficients c_0..c_p of the weight-(w1 + w2 - p) singular vector
    sum_i c_i e_{-1}^i(v1) (x) e_{-1}^(p-i)(v2) in V(w1) (x) V(w2).

    c_i = (-1)^i (2w2-p+i)! (2w1-i)! / ((2w2-p)! (2w1)! i! (p-i)!); the
    binomial-style i!(p-i)! denominator is forced by the raising-operator
    recursion c_i = -c_{i-1} (p-i+1)(2w2-p+i) / (i (2w1-i+1)).

    Singular vectors of weight w1 + w2 - p exist exactly for
    0 <= p <= 2 min(w1, w2) (the tensor product stops at |w1 - w2|), and on
    that range every factorial argument is non-negative.  The result is
    verified on the spot: the raising operator must kill it exactly.
    """
    d1, d2 = _doubled(w1), _doubled(w2)
    if not 0 <= p <= min(d1, d2):
        raise ValueError(
            f"p must satisfy 0 <= p <= 2*min(w1, w2) = {min(d1, d2)}, got {p}")
    from math import factorial

    coeffs = []
    for i in range(p + 1):
        num = factorial(d2 - p + i) * factorial(d1 - i)
        den = factorial(d2 - p) * factorial(d1) * factorial(i) * factorial(p - i)
        coeffs.append(Fraction(-num if i % 2 else num, den))
    m1, m2 = SimpleModule(d1), SimpleModule(d2)
    vec = {(i, p - i): c for i, c in enumerate(coeffs) if c}
    if not vec:
        raise ValueError(f"singular vector vanishes for w1={w1}, w2={w2}, p={p}")
    if _tensor_apply(1, vec, m1, m2):
        raise AssertionError("raising operator does not annihilate the result")
    for (i, j) in vec:
        if d1 - 2 * i + d2 - 2 * j != d1 + d2 - 2 * p:
            raise AssertionError("mixed weights in the singular vector")
    return coeffs


def _doubled(w) -> int:
    d = Fraction(w) * 2
    if d.denominator != 1 or d < 0:
        raise ValueError(f"{w} is not a non-negative half-integer")
    return int(d)


# ---------------------------------------------------------------------------
# chain blocks as sl2-modules

@dataclass(frozen=True)
class WeightModuleView:
    """A monomial basis together with the three exact sl2 action matrices."""

    basis: BlockBasis
    lower: IntMatrix  # e_{-1}
    diag: IntMatrix   # e_0
    raise_: IntMatrix  # e_1

    @classmethod
    def from_basis(cls, k: int, basis: BlockBasis) -> "WeightModuleView":
        if k % 3 != 2:
            raise ValueError("chain blocks are sl2-modules for k = -1 (mod 3)")
        return cls(
            basis=basis,
            lower=matrix_of(lambda c: adjoint_action(-1, c, k), basis, basis),
            diag=matrix_of(lambda c: adjoint_action(0, c, k), basis, basis),
            raise_=matrix_of(lambda c: adjoint_action(1, c, k), basis, basis),
        )

    @classmethod
    def from_block(cls, k: int, h: int) -> "WeightModuleView":
        # a full degree block; weight slices are not closed under the actions
        return cls.from_basis(k, enumerate_block(k, h))

    def check_relations(self) -> None:
        """The defining sl2 relations as exact matrix identities."""
        e0, e1, em1 = self.diag, self.raise_, self.lower
        if (e0 * e1 - e1 * e0) != e1:
            raise AssertionError("[e_0, e_1] != e_1")
        if (e0 * em1 - em1 * e0) != em1.scale(-1):
            raise AssertionError("[e_0, e_-1] != -e_-1")
        if (e1 * em1 - em1 * e1) != e0:
            raise AssertionError("[e_1, e_-1] != e_0")

    def casimir(self) -> IntMatrix:
        return self.lower * self.raise_ + self.diag * self.diag + self.raise_ * self.lower


def singular_multiplicities(view: WeightModuleView) -> RepRingElement:
    """Isotypic multiplicities of a completely reducible module, computed two
    independent ways and required to agree:

    * the kernel dimension of the raising operator on each weight space,
    * consecutive weight-space dimension differences.
    """
    view.check_relations()
    by_weight: dict[int, list[int]] = {}
    for pos, mono in enumerate(view.basis.monomials):
        by_weight.setdefault(weight(mono), []).append(pos)
    dims = {w: len(pos) for w, pos in by_weight.items()}
    mults: dict[int, int] = {}
    total = 0
    w = 0
    while dims.get(w, 0) or dims.get(w + 1, 0):
        here = by_weight.get(w, [])
        above = by_weight.get(w + 1, [])
        above_index = {p: i for i, p in enumerate(above)}
        # raising operator restricted to the weight-w space
        rows = []
        for j in here:
            col = view.raise_.columns[j]
            rows.append(col)
        dense = [[0] * len(here) for _ in range(len(above))]
        for jj, col in enumerate(rows):
            for i, v in col.items():
                ii = above_index.get(i)
                if ii is None:
                    raise AssertionError("raising does not shift weight by one")
                dense[ii][jj] = v
        kernel_dim = len(here) - (bareiss_rank(dense) if dense and here else 0)
        diff = dims.get(w, 0) - dims.get(w + 1, 0)
        if kernel_dim != diff:
            raise AssertionError(
                f"multiplicity methods disagree at weight {w}: "
                f"kernel {kernel_dim}, difference {diff}")
        if kernel_dim:
            mults[2 * w] = kernel_dim
            total += kernel_dim * (2 * w + 1)
        w += 1
    if total != view.basis.dim:
        raise AssertionError(
            f"multiplicities account for {total} of {view.basis.dim} dimensions")
    return RepRingElement(mults)


# The blocks we are willing to decompose with dense matrix arithmetic.
MATRIX_ROUTE_CUT = 220


@lru_cache(maxsize=None)
def _matrix_singular_mults(k: int, h: int) -> RepRingElement:
    return singular_multiplicities(WeightModuleView.from_block(k, h))


def singular_block_dims(k: int, w: int, h: int) -> int:
    """dim of the weight-w singular subspace of the degree-h block of L(k).

    Counted by weight-space dimension differences; on small blocks the full
    matrix route (singular_multiplicities) is run as well and must agree.
    """
    if k % 3 != 2:
        raise ValueError("singular subspaces need k = -1 (mod 3)")
    if w < 0:
        raise ValueError("dominant weights are non-negative")
    dims = _weight_dims_at(k, h)
    value = max(dims.get(w, 0) - dims.get(w + 1, 0), 0)
    if sum(dims.values()) <= MATRIX_ROUTE_CUT:
        if _matrix_singular_mults(k, h).mult(2 * w) != value:
            raise AssertionError(
                f"singular dimension mismatch at k={k}, w={w}, h={h}")
    return value


def singular_block_dims_by_q(k: int, w: int, h: int) -> dict[int, int]:
    """Per chain-dimension refinement of singular_block_dims."""
    if k % 3 != 2:
        raise ValueError("singular subspaces need k = -1 (mod 3)")
    table = block_dim_table(k, h)
    out: dict[int, int] = {}
    for (q, ww, hh), n in table.items():
        if hh != h or ww not in (w, w + 1):
            continue
        out[q] = out.get(q, 0) + (n if ww == w else -n)
    return {q: v for q, v in sorted(out.items()) if v > 0}


@lru_cache(maxsize=None)
def _weight_dims_at(k: int, h: int) -> dict[int, int]:
    from .chains import weight_dim_table

    out: dict[int, int] = {}
    for (w, hh), n in weight_dim_table(k, h).items():
        if hh == h:
            out[w] = out.get(w, 0) + n
    return out


# ---------------------------------------------------------------------------
# tensor powers of the defining module and the associated constant terms

def tensor_power_Q(r: int) -> RepRingElement:
    """r-th Clebsch-Gordan power of the simple module of dominant weight 1.

    Computed both by repeated multiplication and by the Riordan-array
    recurrence on its coefficient polynomial; the two must agree.
    """
    if r < 0:
        raise ValueError("tensor power needs r >= 0")
    z = RepRingElement.simple(2)
    by_product = RepRingElement.one()
    for _ in range(r):
        by_product = by_product * z
    poly = _q_polynomial(r)
    by_recurrence = RepRingElement({2 * w: c for w, c in enumerate(poly) if c})
    if by_product != by_recurrence:
        raise AssertionError(f"tensor power routes disagree at r={r}")
    return by_product


def _q_polynomial(r: int) -> list[int]:
    """Coefficients of Q_r: Q_0 = 1, Q_r = ((z^2+z+1) Q_{r-1} - (z+1) Q_{r-1}(0)) / z."""
    poly = [1]
    for _ in range(r):
        c0 = poly[0]
        num = [0] * (len(poly) + 2)
        for i, c in enumerate(poly):
            num[i] += c
            num[i + 1] += c
            num[i + 2] += c
        num[0] -= c0
        num[1] -= c0
        if num[0] != 0:
            raise AssertionError("Riordan recurrence division is not exact")
        poly = num[1:]
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
    return poly


def motzkin_sums(count: int) -> list[int]:
    """The first ``count`` Motzkin sums 1, 0, 1, 1, 3, 6, 15, 36, ...

    Independent of the representation-ring code: uses the classical
    three-term recurrence a_n = (n - 1) (2 a_{n-1} + 3 a_{n-2}) / (n + 1).
    """
    out = []
    for n in range(count):
        if n == 0:
            out.append(1)
        elif n == 1:
            out.append(0)
        else:
            num = (n - 1) * (2 * out[n - 1] + 3 * out[n - 2])
            if num % (n + 1):
                raise AssertionError("Motzkin recurrence is not integral")
            out.append(num // (n + 1))
    return out
