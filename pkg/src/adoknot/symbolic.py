"""Symbolic rings on top of Q(zeta): Laurent polynomials in the color symbol.

A is the formal symbol q^lambda for a generic color weight lambda.  Braiding
matrices have honest Laurent-polynomial entries in A once the weight-square
prefactor q^(lambda^2/2) per crossing is pulled out; ScaledLaurent tracks that
prefactor as a single half-integer exponent (stored doubled).  AdoPoly is the
final invariant, a Laurent polynomial in x = q^2 * q^(2*lambda) whose
exponents may be half-integers (also stored doubled).
"""

from __future__ import annotations

from fractions import Fraction

from adoknot.cyclo import CycloNum, RingCtx
from adoknot.errors import NonPureScale, ParityError, ZeroPolynomial


class LaurentA:
    """Sparse Laurent polynomial in A with CycloNum coefficients.

    terms maps integer exponent -> nonzero coefficient; the zero polynomial
    has an empty map.  Substituting A -> q^n for integer n commutes with all
    ring operations.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: RingCtx, terms: dict | None = None):
        self.ctx = ctx
        if terms:
            self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        else:
            self.terms = {}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def const(ctx: RingCtx, c: CycloNum) -> "LaurentA":
        return LaurentA(ctx, {0: c})

    @staticmethod
    def mono(ctx: RingCtx, exp: int, c: CycloNum) -> "LaurentA":
        return LaurentA(ctx, {exp: c})

    @staticmethod
    def one(ctx: RingCtx) -> "LaurentA":
        return LaurentA(ctx, {0: ctx.one()})

    @staticmethod
    def weight_bracket(ctx: RingCtx, shift: int) -> "LaurentA":
        """[lambda + shift] = (A*q^shift - A^(-1)*q^(-shift)) / (q - q^(-1))."""
        d = (ctx.q_pow(1) - ctx.q_pow(-1)).inv()
        return LaurentA(ctx, {1: ctx.q_pow(shift) * d, -1: -(ctx.q_pow(-shift) * d)})

    # -- ring operations -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        res = LaurentA.__new__(LaurentA)
        res.ctx, res.terms = self.ctx, out
        return res

    def __neg__(self):
        res = LaurentA.__new__(LaurentA)
        res.ctx = self.ctx
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CycloNum):
            if other.is_zero():
                return LaurentA(self.ctx)
            res = LaurentA.__new__(LaurentA)
            res.ctx = self.ctx
            res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        if isinstance(other, int):
            return self * self.ctx.from_rational(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        out = {e: c for e, c in out.items() if not c.is_zero()}
        res = LaurentA.__new__(LaurentA)
        res.ctx, res.terms = self.ctx, out
        return res

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentA":
        """Multiply by A^k."""
        res = LaurentA.__new__(LaurentA)
        res.ctx = self.ctx
        res.terms = {e + k: c for e, c in self.terms.items()}
        return res

    def __eq__(self, other):
        if not isinstance(other, LaurentA):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def eval_at(self, n: int) -> CycloNum:
        """Substitute A -> q^n (integer color weight)."""
        acc = self.ctx.zero()
        for e, c in self.terms.items():
            acc = acc + c * self.ctx.q_pow(n * e)
        return acc

    def support(self):
        return sorted(self.terms)

    def __repr__(self):
        if not self.terms:
            return "LaurentA(0)"
        bits = [f"A^{e}*{c!r}" for e, c in sorted(self.terms.items())]
        return "LaurentA(" + " + ".join(bits) + ")"


class ScaledLaurent:
    """A LaurentA body times the global factor q^(lambda^2 * sq2/2).

    sq2 is twice the exponent of the weight-square prefactor, so sq2 = 1
    means one factor of q^(lambda^2/2).  Only pure values (sq2 == 0) may be
    converted to the x-variable.
    """

    __slots__ = ("sq2", "body")

    def __init__(self, sq2: int, body: LaurentA):
        self.sq2 = sq2
        self.body = body

    def __mul__(self, other):
        if isinstance(other, ScaledLaurent):
            return ScaledLaurent(self.sq2 + other.sq2, self.body * other.body)
        return ScaledLaurent(self.sq2, self.body * other)

    def is_pure(self) -> bool:
        return self.sq2 == 0

    def __eq__(self, other):
        if not isinstance(other, ScaledLaurent):
            return NotImplemented
        return self.sq2 == other.sq2 and self.body == other.body

    def __repr__(self):
        return f"ScaledLaurent(sq2={self.sq2}, body={self.body!r})"


class AdoPoly:
    """The invariant as a Laurent polynomial in x, exponents stored doubled.

    For an s-component link at root order p the support sits in the coset
    (p-1)(s-1)/2 + Z, so doubled exponents all share the parity of
    (p-1)(s-1).  Coefficients live in Q(zeta); accepted invariants are
    checked to land in Z[q^2].
    """

    __slots__ = ("ctx", "components", "terms")

    def __init__(self, ctx: RingCtx, components: int, terms: dict | None = None):
        self.ctx = ctx
        self.components = components
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}
        par = ((ctx.p - 1) * (components - 1)) % 2
        if any(e % 2 != par for e in self.terms):
            raise ParityError(f"x-exponent parity must be {par} (doubled) throughout")

    @property
    def p(self) -> int:
        return self.ctx.p

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp2: int) -> CycloNum:
        return self.terms.get(exp2, self.ctx.zero())

    def __eq__(self, other):
        if not isinstance(other, AdoPoly):
            return NotImplemented
        return (
            self.ctx.p == other.ctx.p
            and self.components == other.components
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return AdoPoly(self.ctx, self.components, out)

    def __mul__(self, other):
        if isinstance(other, CycloNum):
            return AdoPoly(self.ctx, self.components, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        comp = self.components + other.components - 1  # parity bookkeeping under product
        return AdoPoly(self.ctx, comp, out)

    def mirror(self) -> "AdoPoly":
        """x -> 1/x together with q -> 1/q: the invariant of the mirror link."""
        return AdoPoly(self.ctx, self.components, {-e: c.conj() for e, c in self.terms.items()})

    def __repr__(self):
        return f"AdoPoly(p={self.ctx.p}, s={self.components}, terms={len(self.terms)})"


def to_x(v: ScaledLaurent, ctx: RingCtx, components: int) -> AdoPoly:
    """Convert a pure scaled value to the x-variable via A^e = q^(-e) x^(e/2).

    x = q^2 * A^2, so each A-exponent e maps to the doubled x-exponent e with
    coefficient multiplied by q^(-e).  All A-exponents must share the parity
    of (p-1)(s-1).
    """
    if v.sq2 != 0:
        raise NonPureScale(f"residual weight-square exponent {v.sq2}/2")
    par = ((ctx.p - 1) * (components - 1)) % 2
    terms = {}
    for e, c in v.body.terms.items():
        if e % 2 != par:
            raise ParityError(f"A-exponent {e} violates parity {par}")
        terms[e] = c * ctx.q_pow(-e)
    return AdoPoly(ctx, components, terms)


def degree_data(f: AdoPoly):
    """(max_deg, min_deg, breadth, top_coeff) with degrees as exact halves."""
    if f.is_zero():
        raise ZeroPolynomial("degree data of the zero polynomial")
    hi = max(f.terms)
    lo = min(f.terms)
    return Fraction(hi, 2), Fraction(lo, 2), (hi - lo) // 2, f.terms[hi]


def is_symmetric(f: AdoPoly) -> bool:
    """Invariance under x -> 1/x."""
    return all(f.coeff(-e) == c for e, c in f.terms.items())


def ado_to_json(f: AdoPoly) -> dict:
    from adoknot.cyclo import cyclo_to_json

    return {
        "p": f.ctx.p,
        "components": f.components,
        "terms": [
            {"exp2": e, "coeff": cyclo_to_json(c)} for e, c in sorted(f.terms.items())
        ],
    }


def ado_from_json(ctx: RingCtx, data: dict) -> AdoPoly:
    from adoknot.cyclo import cyclo_from_json

    if data["p"] != ctx.p:
        raise ValueError("root order mismatch")
    terms = {t["exp2"]: cyclo_from_json(ctx, t["coeff"]) for t in data["terms"]}
    return AdoPoly(ctx, data["components"], terms)


# -- pretty printing ----------------------------------------------------------


def zq2_coords(x: CycloNum):
    """Integer coordinates of x in the power basis of q^2, or None."""
    from adoknot.cyclo import cyclotomic_poly

    ctx = x.ctx
    rank = len(cyclotomic_poly(ctx.p)) - 1
    cols = [ctx.zeta_pow(4 * j).coords for j in range(rank)]
    dim = ctx.dim
    aug = [[Fraction(cols[j][i]) for j in range(rank)] + [Fraction(x.coords[i])] for i in range(dim)]
    piv = []
    r = 0
    for col in range(rank):
        sel = next((i for i in range(r, dim) if aug[i][col]), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        lead = aug[r][col]
        aug[r] = [v / lead for v in aug[r]]
        for i in range(dim):
            if i != r and aug[i][col]:
                fct = aug[i][col]
                aug[i] = [v - fct * w for v, w in zip(aug[i], aug[r])]
        piv.append((r, col))
        r += 1
    for i in range(r, dim):
        if aug[i][rank]:
            return None
    sol = [Fraction(0)] * rank
    for row, col in piv:
        sol[col] = aug[row][rank]
    if not all(v.denominator == 1 for v in sol):
        return None
    return [int(v) for v in sol]


def _coeff_str(c: CycloNum) -> str:
    """Render a Z[q^2] coefficient, Gaussian-integer style when p = 4."""
    ctx = c.ctx
    coords = zq2_coords(c)
    if coords is None:
        return "(" + "+".join(f"{s}*zeta^{j}" for j, s in enumerate(c.coords) if s) + ")"
    if ctx.p == 4:
        a, b = coords  # c = a + b*i with i = q^2
        if b == 0:
            return str(a)
        if a == 0:
            return {1: "i", -1: "-i"}.get(b, f"{b} i")
        sgn = "+" if b > 0 else "-"
        return f"({a} {sgn} {abs(b)} i)"
    nonzero = [(j, v) for j, v in enumerate(coords) if v]
    if not nonzero:
        return "0"
    if len(nonzero) == 1:
        j, v = nonzero[0]
        if j == 0:
            return str(v)
        head = {1: "", -1: "-"}.get(v, f"{v} ")
        return f"{head}q^{2 * j}" if 2 * j != 1 else f"{head}q"
    bits = []
    for j, v in nonzero:
        term = str(v) if j == 0 else (f"q^{2 * j}" if abs(v) == 1 else f"{abs(v)} q^{2 * j}")
        if j > 0 and v < 0:
            term = "-" + term
        bits.append(term)
    return "(" + " + ".join(bits).replace("+ -", "- ") + ")"


def pretty(f: AdoPoly) -> str:
    """Nonnegative-exponent part in table style, e.g. '7+6 x+3 x^2+x^3'."""
    if f.is_zero():
        return "0"
    bits = []
    for e in sorted(k for k in f.terms if k >= 0):
        c = _coeff_str(f.terms[e])
        if e == 0:
            bits.append(c)
            continue
        xs = "x" if e == 2 else (f"x^{e // 2}" if e % 2 == 0 else f"x^{e}/2".replace(f"{e}/2", f"({e}/2)"))
        if c == "1":
            bits.append(xs)
        elif c == "-1":
            bits.append(f"-{xs}")
        else:
            bits.append(f"{c} {xs}")
    out = bits[0]
    for b in bits[1:]:
        out += ("-" + b[1:]) if b.startswith("-") else ("+" + b)
    return out
