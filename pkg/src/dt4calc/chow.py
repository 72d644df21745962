"""Intersection theory on products of projective spaces and hypersurfaces.

The ambient ring for P^{n_1} x ... x P^{n_m} is Q[h_1..h_m] modulo
h_i^{n_i + 1}; a class is a map from exponent tuples to Fraction.  A smooth
divisor X in |O(d_1..d_m)| is handled without ever presenting its own ring:
classes restricted from the ambient space are multiplied upstairs, the Todd
class of X is the ambient expression td(T_W) td_line(D)^{-1}, and the push
forward of integration is multiplication by D.  Everything stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import Unsupported

# x/(1 - e^-x) and its inverse, coefficients by degree
_TD_LINE = [Fraction(1), Fraction(1, 2), Fraction(1, 12), Fraction(0),
            Fraction(-1, 720), Fraction(0), Fraction(1, 30240)]
_TD_LINE_INV = [Fraction((-1) ** k, factorial(k + 1)) for k in range(7)]


class RingPresentation:
    """Chow ring of a product of projective spaces, one generator per factor."""

    __slots__ = ("dims",)

    def __init__(self, dims):
        dims = tuple(int(n) for n in dims)
        if not dims or any(n < 1 for n in dims):
            raise ValueError(f"need positive factor dimensions, got {dims!r}")
        self.dims = dims

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def top_monomial(self):
        return self.dims

    def __eq__(self, other):
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"RingPresentation{self.dims}"


class CohClass:
    """Inhomogeneous cohomology class with exact rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingPresentation, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                mono = tuple(mono)
                if len(mono) != len(ring.dims):
                    raise ValueError(f"monomial {mono!r} does not fit {ring!r}")
                if c and all(e <= n for e, n in zip(mono, ring.dims)):
                    clean[mono] = c
        self.terms = clean

    @staticmethod
    def zero(ring) -> "CohClass":
        return CohClass(ring)

    @staticmethod
    def one(ring) -> "CohClass":
        return CohClass(ring, {(0,) * len(ring.dims): Fraction(1)})

    @staticmethod
    def generator(ring, i: int) -> "CohClass":
        mono = [0] * len(ring.dims)
        mono[i] = 1
        return CohClass(ring, {tuple(mono): Fraction(1)})

    def _check(self, other: "CohClass"):
        if self.ring != other.ring:
            raise ValueError("classes live in different rings")

    def __add__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = CohClass.__new__(CohClass)
        out.ring, out.terms = self.ring, terms
        return out

    def __neg__(self):
        out = CohClass.__new__(CohClass)
        out.ring = self.ring
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CohClass):
            return NotImplemented
        self._check(other)
        dims = self.ring.dims
        terms = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(a + b for a, b in zip(ma, mb))
                if any(e > n for e, n in zip(mono, dims)):
                    continue
                s = terms.get(mono, Fraction(0)) + ca * cb
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        out = CohClass.__new__(CohClass)
        out.ring, out.terms = self.ring, terms
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "CohClass":
        c = c if isinstance(c, Fraction) else Fraction(c)
        out = CohClass.__new__(CohClass)
        out.ring = self.ring
        out.terms = {m: c * v for m, v in self.terms.items()} if c else {}
        return out

    def power(self, k: int) -> "CohClass":
        out = CohClass.one(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def component(self, degree: int) -> "CohClass":
        out = CohClass.__new__(CohClass)
        out.ring = self.ring
        out.terms = {m: c for m, c in self.terms.items() if sum(m) == degree}
        return out

    def degree_zero_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.ring.dims), Fraction(0))

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            body = "*".join(f"h{i + 1}^{e}" if e > 1 else f"h{i + 1}"
                            for i, e in enumerate(mono) if e)
            if not body:
                body = str(abs(c))
            elif abs(c) != 1:
                body = f"{abs(c)}*{body}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"CohClass({self})"


def exp_class(x: CohClass) -> CohClass:
    """exp of a class with no degree zero part, truncated by the ring."""
    if x.component(0).terms:
        raise ValueError("exponential needs a class with zero constant term")
    out = CohClass.one(x.ring)
    term = CohClass.one(x.ring)
    for k in range(1, x.ring.dim + 1):
        term = term * x
        out = out + term.scale(Fraction(1, factorial(k)))
        if not term.terms:
            break
    return out


def _line_series(x: CohClass, coeffs) -> CohClass:
    out = CohClass.zero(x.ring)
    term = CohClass.one(x.ring)
    for k in range(x.ring.dim + 1):
        if k:
            term = term * x
        out = out + term.scale(coeffs[k])
        if not term.terms:
            break
    return out


def td_line(x: CohClass) -> CohClass:
    """Todd series of a line bundle with first Chern class x."""
    return _line_series(x, _TD_LINE)


def td_line_inv(x: CohClass) -> CohClass:
    return _line_series(x, _TD_LINE_INV)


class SheafClass:
    """K theory class recorded by its Chern character."""

    __slots__ = ("ch",)

    def __init__(self, ch: CohClass):
        self.ch = ch

    @property
    def rank(self) -> Fraction:
        return self.ch.degree_zero_value()

    def __add__(self, other):
        if not isinstance(other, SheafClass):
            return NotImplemented
        return SheafClass(self.ch + other.ch)

    def __sub__(self, other):
        if not isinstance(other, SheafClass):
            return NotImplemented
        return SheafClass(self.ch - other.ch)

    def dual(self) -> "SheafClass":
        out = CohClass.zero(self.ch.ring)
        for k in range(self.ch.ring.dim + 1):
            comp = self.ch.component(k)
            out = out + (comp if k % 2 == 0 else -comp)
        return SheafClass(out)

    def tensor(self, other: "SheafClass") -> "SheafClass":
        return SheafClass(self.ch * other.ch)

    def ch_component(self, k: int) -> CohClass:
        return self.ch.component(k)

    def __eq__(self, other):
        if not isinstance(other, SheafClass):
            return NotImplemented
        return self.ch == other.ch

    def __repr__(self):
        return f"SheafClass({self.ch})"


class VarietyContext:
    """A product of projective spaces, or a smooth divisor in one.

    For a divisor the ring stays the ambient one; ``divisor`` is the class
    cut out and ``todd`` is the Todd class of the divisor written upstairs.
    """

    __slots__ = ("ring", "divisor", "todd", "tangent_chern")

    def __init__(self, ring, divisor, todd, tangent_chern):
        self.ring = ring
        self.divisor = divisor
        self.todd = todd
        self.tangent_chern = tangent_chern

    @classmethod
    def product_space(cls, dims) -> "VarietyContext":
        ring = RingPresentation(dims)
        todd = CohClass.one(ring)
        chern = CohClass.one(ring)
        for i, n in enumerate(ring.dims):
            h = CohClass.generator(ring, i)
            for _ in range(n + 1):
                todd = todd * td_line(h)
            chern = chern * (CohClass.one(ring) + h).power(n + 1)
        return cls(ring, None, todd, chern)

    @classmethod
    def hypersurface_in_product(cls, dims, multidegree) -> "VarietyContext":
        ambient = cls.product_space(dims)
        ring = ambient.ring
        if len(multidegree) != len(ring.dims):
            raise ValueError("multidegree length does not match the ring")
        d = CohClass.zero(ring)
        for i, k in enumerate(multidegree):
            d = d + CohClass.generator(ring, i).scale(k)
        todd = ambient.todd * td_line_inv(d)
        chern = ambient.tangent_chern * _line_series(
            d, [Fraction(1), Fraction(-1)] + [Fraction((-1) ** k) for k in range(2, 7)])
        return cls(ring, d, todd, chern)

    @property
    def dim(self) -> int:
        return self.ring.dim - (1 if self.divisor is not None else 0)

    def integrate(self, cls_: CohClass) -> Fraction:
        if self.divisor is not None:
            cls_ = cls_ * self.divisor
        return cls_.coefficient(self.ring.top_monomial)

    def euler_characteristic_of_structure_sheaf(self) -> Fraction:
        return self.integrate(self.todd)

    def euler_number(self) -> Fraction:
        """Integral of the top Chern class of the tangent bundle."""
        return self.integrate(self.tangent_chern.component(self.dim))

    def chi(self, e: SheafClass, f: SheafClass) -> Fraction:
        """Euler pairing by the Riemann Roch integral."""
        return self.integrate(e.dual().ch * f.ch * self.todd)

    def line_bundle(self, degrees) -> SheafClass:
        c1 = CohClass.zero(self.ring)
        for i, k in enumerate(degrees):
            c1 = c1 + CohClass.generator(self.ring, i).scale(k)
        return SheafClass(exp_class(c1))

    def cotangent_sheaf_class(self) -> SheafClass:
        """Chern character of the cotangent bundle, from the tangent Chern data."""
        rank = Fraction(self.dim)
        cherns = [self.tangent_chern.component(k) for k in range(1, 5)]
        ch = chern_to_ch(rank, cherns, self.ring)
        if self.divisor is not None:
            raise Unsupported("cotangent classes are only set up on product spaces")
        total = CohClass.zero(self.ring)
        for k, comp in enumerate(ch):
            total = total + (comp if k % 2 == 0 else -comp)
        return SheafClass(total)


def chern_to_ch(rank, chern, ring) -> list[CohClass]:
    """Chern classes c1..c4 to Chern character components ch0..ch4."""
    c = [CohClass.one(ring).scale(0)] + list(chern)
    while len(c) < 5:
        c.append(CohClass.zero(ring))
    p = [CohClass.zero(ring)] * 5
    for k in range(1, 5):
        acc = c[k].scale(Fraction((-1) ** (k - 1) * k))
        for i in range(1, k):
            acc = acc + (c[i] * p[k - i]).scale(Fraction((-1) ** (i - 1)))
        p[k] = acc
    out = [CohClass.one(ring).scale(Fraction(rank))]
    for k in range(1, 5):
        out.append(p[k].scale(Fraction(1, factorial(k))))
    return out


def ch_to_chern(ch) -> tuple[Fraction, list[CohClass]]:
    """Chern character components ch0..ch4 back to (rank, c1..c4)."""
    ring = ch[0].ring
    rank = ch[0].degree_zero_value()
    p = [CohClass.zero(ring)] * 5
    for k in range(1, min(5, len(ch))):
        p[k] = ch[k].scale(Fraction(factorial(k)))
    c = [CohClass.zero(ring)] * 5
    for k in range(1, 5):
        acc = p[k]
        for i in range(1, k):
            acc = acc + (c[i] * p[k - i]).scale(Fraction((-1) ** i))
        c[k] = acc.scale(Fraction((-1) ** (k - 1), k))
    return rank, c[1:]


def todd_from_chern(chern, ring) -> list[CohClass]:
    """Universal Todd polynomials in c1..c4, degree by degree."""
    c1, c2, c3, c4 = (list(chern) + [CohClass.zero(ring)] * 4)[:4]
    td0 = CohClass.one(ring)
    td1 = c1.scale(Fraction(1, 2))
    td2 = (c1 * c1 + c2).scale(Fraction(1, 12))
    td3 = (c1 * c2).scale(Fraction(1, 24))
    td4 = ((c1 * c1 * c1 * c1).scale(-1) + (c1 * c1 * c2).scale(4)
           + c1 * c3 + (c2 * c2).scale(3) - c4).scale(Fraction(1, 720))
    return [td0, td1, td2, td3, td4]


def generalized_binomial(top: int, k: int) -> Fraction:
    """binomial(top, k) for any integer top, nonnegative k."""
    num = Fraction(1)
    for j in range(k):
        num *= Fraction(top - j, j + 1)
    return num


def chi_product_line_oracle(dims, degrees) -> Fraction:
    """chi of O(d_1..d_m) on a product of projective spaces, by the closed
    binomial formula factor by factor; independent of any integral."""
    out = Fraction(1)
    for n, d in zip(dims, degrees):
        out *= generalized_binomial(d + n, n)
    return out


QUINTIC_CONTEXT_DIMS = (1, 4)
QUINTIC_CONTEXT_DEGREE = (2, 5)


def cy_hypersurface_context() -> VarietyContext:
    """The smooth (2,5) divisor in P^1 x P^4, a Calabi Yau fourfold."""
    return VarietyContext.hypersurface_in_product(QUINTIC_CONTEXT_DIMS,
                                                  QUINTIC_CONTEXT_DEGREE)


def structure_sheaf_chi_check() -> dict:
    """chi(O_X, O_X) two ways: the Riemann Roch integral on the divisor and
    the ambient route 1 - chi_W(O(-2,-5)) by the binomial oracle."""
    ctx = cy_hypersurface_context()
    o = ctx.line_bundle((0, 0))
    direct = ctx.chi(o, o)
    oracle = 1 - chi_product_line_oracle(QUINTIC_CONTEXT_DIMS,
                                         tuple(-k for k in QUINTIC_CONTEXT_DEGREE))
    return {"direct": direct, "oracle": oracle, "ok": direct == oracle}


def liqin_case(eps1: int, eps2: int) -> dict:
    """Euler pairing and expected deformation dimension for the two term
    extension class on the (2,5) fourfold, one case per (eps1, eps2) in
    {0,1}^2.

    Two values of k are reported: the one obtained from chi by k = (2 -
    chi)/2, and the closed binomial expression (1 + eps1) * C(6 - eps2, 4).
    The sources disagree for (0, 1); both numbers are surfaced on purpose.
    """
    if eps1 not in (0, 1) or eps2 not in (0, 1):
        raise ValueError("eps1 and eps2 must be 0 or 1")
    ctx = cy_hypersurface_context()
    e = ctx.line_bundle((-1, 1)) + ctx.line_bundle((eps1 + 1, eps2 - 1))
    chi = ctx.chi(e, e)
    if (2 - chi) % 2 != 0:
        raise ValueError(f"chi = {chi} is odd, cannot halve")
    k = (2 - chi) // 2
    k_binomial = (1 + eps1) * int(generalized_binomial(6 - eps2, 4))
    return {"eps1": eps1, "eps2": eps2, "chi": chi, "k": int(k),
            "k_binomial": k_binomial, "agree": int(k) == k_binomial}


def vdim_ideal_cy4(n: int, h02: int) -> dict:
    """Real virtual half dimension for n points, by holonomy type.

    h02 = 0 is full SU(4) holonomy, h02 = 1 the hyperkaehler case; the Euler
    pairing chi(I, I) = -2n + 2 + h02 gives the dimension as 2 - chi.
    """
    if n < 0:
        raise ValueError("point count must be nonnegative")
    if h02 not in (0, 1):
        raise ValueError("h02 must be 0 or 1")
    chi = -2 * n + 2 + h02
    vd = 2 - chi
    if vd != 2 * n - h02:
        raise AssertionError("dimension bookkeeping broke")
    return {"n": n, "h02": h02, "chi": chi, "vdim": vd}


def projective_plane_context() -> VarietyContext:
    return VarietyContext.product_space((2,))


def surface_obstruction_identity(c) -> dict:
    """Both sides of the obstruction dimension identity on the plane.

    For a sheaf class ch = (r, a h, b h^2) the left side is
    -chi(F, F tensor cotangent) and the right side -2 chi(F, F) + r^2 e(S);
    they agree for every class, which is what the reduced theory needs.
    """
    r, a, b = c
    ctx = projective_plane_context()
    ring = ctx.ring
    h = CohClass.generator(ring, 0)
    ch = (CohClass.one(ring).scale(Fraction(r)) + h.scale(Fraction(a))
          + (h * h).scale(Fraction(b)))
    f = SheafClass(ch)
    omega = ctx.cotangent_sheaf_class()
    e_s = ctx.euler_number()
    lhs = -ctx.chi(f, f.tensor(omega))
    rhs = -2 * ctx.chi(f, f) + Fraction(r) ** 2 * e_s
    return {"c": tuple(c), "lhs": lhs, "rhs": rhs, "euler": e_s, "ok": lhs == rhs}
