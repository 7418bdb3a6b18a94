"""Exact arithmetic in the cyclotomic field Q(zeta), zeta a primitive 4p-th root of unity.

Everything downstream works over this field: with q = zeta^2 a primitive
2p-th root of unity, the half-powers q^(1/2) = zeta needed by the ribbon
element are honest field elements.  Elements are stored as rational
coordinate vectors in the power basis 1, zeta, ..., zeta^(phi(4p)-1) and
reduced modulo the 4p-th cyclotomic polynomial, so equality is a plain
coordinate comparison.  No floating point is used anywhere except in the
display-only complex embedding.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache


def cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficient list (low degree first) of the n-th cyclotomic polynomial.

    Computed by exact division of X^n - 1 by the cyclotomic polynomials of
    the proper divisors of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    # X^n - 1
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_poly(d))
    return poly


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials, low degree first."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    quot = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[dd + k]
        if c % den[dd] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[dd]
        quot[k] = q
        for j in range(dd + 1):
            num[k + j] -= q * den[j]
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


class RingCtx:
    """Context for Q(zeta_{4p}): minimal polynomial, power-basis reduction data.

    Immutable after construction and shared by every CycloNum built from it.
    """

    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"root order p must be >= 2, got {p}")
        self.p = p
        self.order = 4 * p  # multiplicative order of zeta
        self.phi = cyclotomic_poly(self.order)
        self.dim = len(self.phi) - 1
        # zeta^(dim+j) in the power basis, integer rows (phi is monic).
        self._red = self._reduction_rows()
        self._zeta_tab = self._zeta_table()
        self._zq2_solver = None  # built lazily

    def _reduction_rows(self) -> list[tuple[int, ...]]:
        rows = []
        # start with zeta^dim = -(phi - X^dim)
        cur = [-c for c in self.phi[: self.dim]]
        rows.append(tuple(cur))
        for _ in range(self.dim - 2):
            # multiply by zeta: shift, then reduce the overflow term
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c + top * r for c, r in zip(cur, rows[0])]
            rows.append(tuple(cur))
        return rows

    def _zeta_table(self) -> list["CycloNum"]:
        tab = []
        one = [Fraction(0)] * self.dim
        one[0] = Fraction(1)
        cur = CycloNum(self, tuple(one))
        gen_coords = [Fraction(0)] * self.dim
        gen_coords[1 % self.dim] = Fraction(1)
        gen = CycloNum(self, tuple(gen_coords))
        for _ in range(self.order):
            tab.append(cur)
            cur = cur * gen
        return tab

    # -- element constructors ------------------------------------------------

    def zero(self) -> "CycloNum":
        return CycloNum(self, (Fraction(0),) * self.dim)

    def one(self) -> "CycloNum":
        return self._zeta_tab[0]

    def from_rational(self, a) -> "CycloNum":
        coords = [Fraction(0)] * self.dim
        coords[0] = Fraction(a)
        return CycloNum(self, tuple(coords))

    def zeta_pow(self, k: int) -> "CycloNum":
        """zeta^k, any integer k (reduced mod 4p)."""
        return self._zeta_tab[k % self.order]

    def q_pow(self, k: int) -> "CycloNum":
        """q^k = zeta^(2k)."""
        return self._zeta_tab[(2 * k) % self.order]

    def quantum_int(self, n: int) -> "CycloNum":
        """[n] = (q^n - q^(-n)) / (q - q^(-1)), as the balanced q-power sum."""
        if n == 0:
            return self.zero()
        if n < 0:
            return -self.quantum_int(-n)
        acc = self.zero()
        for j in range(n):
            acc = acc + self.q_pow(n - 1 - 2 * j)
        return acc

    def quantum_factorial(self, n: int) -> "CycloNum":
        acc = self.one()
        for k in range(1, n + 1):
            acc = acc * self.quantum_int(k)
        return acc

    def __repr__(self):
        return f"RingCtx(p={self.p}, dim={self.dim})"


@lru_cache(maxsize=None)
def ring(p: int) -> RingCtx:
    """Shared context for root order p (contexts are immutable, caching is safe)."""
    return RingCtx(p)


class CycloNum:
    """An element of Q(zeta_{4p}): rational coordinates in the power basis."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: RingCtx, coords: tuple):
        self.ctx = ctx
        self.coords = coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __add__(self, other):
        return CycloNum(self.ctx, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return CycloNum(self.ctx, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CycloNum(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.ctx, tuple(a * other for a in self.coords))
        dim = self.ctx.dim
        a, b = self.coords, other.coords
        prod = [Fraction(0)] * (2 * dim - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:dim]
        red = self.ctx._red
        for j in range(dim, 2 * dim - 1):
            c = prod[j]
            if c:
                row = red[j - dim]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycloNum(self.ctx, tuple(out))

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm mod phi."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero in Q(zeta)")
        phi = [Fraction(c) for c in self.ctx.phi]
        a = list(self.coords)
        # extended gcd of a and phi over Q[X]; phi irreducible => gcd is a constant
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        c = next(x for x in reversed(r0) if x)  # leading coefficient of the constant gcd
        coords = [x / c for x in s0]
        coords += [Fraction(0)] * (self.ctx.dim - len(coords))
        return CycloNum(self.ctx, tuple(coords[: self.ctx.dim]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1, 1) / other
            return self * inv
        return self * other.inv()

    def __eq__(self, other):
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.ctx is other.ctx and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def galois(self, k: int) -> "CycloNum":
        """Image under zeta -> zeta^k (k must be a unit mod 4p)."""
        from math import gcd

        if gcd(k, self.ctx.order) != 1:
            raise ValueError("galois exponent must be coprime to 4p")
        out = self.ctx.zero()
        for j, c in enumerate(self.coords):
            if c:
                out = out + self.ctx.zeta_pow(j * k) * c
        return out

    def conj(self) -> "CycloNum":
        """Complex conjugation, zeta -> zeta^(-1) (equivalently q -> q^(-1))."""
        return self.galois(self.ctx.order - 1)

    def approx(self) -> complex:
        """Float embedding with zeta -> exp(i*pi/(2p)).  Display only."""
        z = cmath.exp(1j * cmath.pi / (2 * self.ctx.p))
        return sum(float(c) * z**j for j, c in enumerate(self.coords))

    def __repr__(self):
        return f"CycloNum({list(map(str, self.coords))})"


def _qpoly_divmod(a: list, b: list):
    a = list(a)
    db = max(i for i, c in enumerate(b) if c)
    lead = b[db]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[db + k]
        if c:
            f = c / lead
            q[k] = f
            for j in range(db + 1):
                a[k + j] -= f * b[j]
    while len(a) > 1 and not a[-1]:
        a.pop()
    return q, a


def _qpoly_mul(a: list, b: list):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _qpoly_sub(a: list, b: list):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def in_zq2(x: CycloNum) -> bool:
    """Whether x lies in Z[q^2], the integer span of powers of q^2.

    Solved as an exact linear system over Q in the power basis of q^2
    (q^2 = zeta^4 is a primitive p-th root of unity, so the basis has
    phi(p) elements); membership requires an integral solution.
    """
    ctx = x.ctx
    if ctx._zq2_solver is None:
        rank = len(cyclotomic_poly(ctx.p)) - 1  # phi(p)
        cols = [ctx.zeta_pow(4 * j).coords for j in range(rank)]
        ctx._zq2_solver = (rank, cols)
    rank, cols = ctx._zq2_solver
    # Gaussian elimination on the dim x (rank+1) augmented system.
    dim = ctx.dim
    aug = [[Fraction(cols[j][i]) for j in range(rank)] + [Fraction(x.coords[i])] for i in range(dim)]
    piv_rows = []
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
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_rows.append((r, col))
        r += 1
    # consistency: rows without pivot must have zero RHS
    for i in range(r, dim):
        if aug[i][rank]:
            return False
    sol = [Fraction(0)] * rank
    for row, col in piv_rows:
        sol[col] = aug[row][rank]
    return all(v.denominator == 1 for v in sol)


def cyclo_to_json(x: CycloNum) -> list[str]:
    return [f"{c.numerator}/{c.denominator}" for c in x.coords]


def cyclo_from_json(ctx: RingCtx, arr: list[str]) -> CycloNum:
    if len(arr) != ctx.dim:
        raise ValueError(f"expected {ctx.dim} coordinates, got {len(arr)}")
    return CycloNum(ctx, tuple(Fraction(s) for s in arr))
