"""Representation theory backing the invariant: Verma modules, braiding, ribbon.

The p-dimensional Verma module of generic highest weight carries the actions

    E v_i = [w - i + 1] v_{i-1},   F v_i = [i + 1] v_{i+1},   K v_i = A q^{-2i} v_i

with A the formal symbol q^w for the color weight w, and its dual carries the
antipode-twisted actions.  The braiding on two like-colored strands is the
truncated quasi-R-matrix followed by the weight pairing operator and the flip;
its weight-square prefactor q^(w^2/2) per crossing is tracked separately as a
ScaledLaurent exponent.  The ribbon element acts on the integer-weight module
Y = V* (x) V through the order-4p grouplike k, with k acting on a weight-m
vector as zeta^m.
"""

from __future__ import annotations

from functools import lru_cache

from adoknot.cyclo import RingCtx, ring
from adoknot.errors import DecompositionFailure, NonScalarTwist
from adoknot.linalg import OpMatrix
from adoknot.symbolic import LaurentA, ScaledLaurent


class VermaData:
    """Exact matrices for the Verma module and its dual at root order p."""

    def __init__(self, p: int):
        self.p = p
        self.ctx = ring(p)
        ctx = self.ctx
        mono = LaurentA.mono
        br = LaurentA.weight_bracket

        E = {}
        F = {}
        K = {}
        Kinv = {}
        for i in range(p):
            K[(i, i)] = mono(ctx, 1, ctx.q_pow(-2 * i))
            Kinv[(i, i)] = mono(ctx, -1, ctx.q_pow(2 * i))
            if i >= 1:
                E[(i - 1, i)] = br(ctx, -i + 1)
            if i <= p - 2:
                F[(i + 1, i)] = LaurentA.const(ctx, ctx.quantum_int(i + 1))
        self.E = OpMatrix(p, p, E)
        self.F = OpMatrix(p, p, F)
        self.K = OpMatrix(p, p, K)
        self.Kinv = OpMatrix(p, p, Kinv)

        Ed = {}
        Fd = {}
        Kd = {}
        Kdinv = {}
        for i in range(p):
            Kd[(i, i)] = mono(ctx, -1, ctx.q_pow(2 * i))
            Kdinv[(i, i)] = mono(ctx, 1, ctx.q_pow(-2 * i))
            if i <= p - 2:
                # E v'_i = -q^(-w + 2(i+1)) [w - i] v'_{i+1}
                Ed[(i + 1, i)] = mono(ctx, -1, -ctx.q_pow(2 * (i + 1))) * br(ctx, -i)
            if i >= 1:
                # F v'_i = -q^(w - 2i) [i] v'_{i-1}
                Fd[(i - 1, i)] = mono(ctx, 1, -(ctx.q_pow(-2 * i) * ctx.quantum_int(i)))
        self.Ed = OpMatrix(p, p, Ed)
        self.Fd = OpMatrix(p, p, Fd)
        self.Kd = OpMatrix(p, p, Kd)
        self.Kdinv = OpMatrix(p, p, Kdinv)

    def weight(self, i: int, dual: bool = False):
        """Affine weight (a, b) meaning a*w + b of the i-th basis vector."""
        return (-1, 2 * i) if dual else (1, -2 * i)


@lru_cache(maxsize=None)
def verma(p: int) -> VermaData:
    return VermaData(p)


def check_relations(vd: VermaData) -> dict:
    """Every defining relation as an exact matrix identity, on V and its dual."""
    ctx = vd.ctx
    p = vd.p
    q2 = LaurentA.const(ctx, ctx.q_pow(2))
    q2i = LaurentA.const(ctx, ctx.q_pow(-2))
    dq = LaurentA.const(ctx, (ctx.q_pow(1) - ctx.q_pow(-1)).inv())
    ident = OpMatrix.identity(p, LaurentA.one(ctx))
    report = {}
    for tag, (E, F, K, Kinv) in {
        "module": (vd.E, vd.F, vd.K, vd.Kinv),
        "dual": (vd.Ed, vd.Fd, vd.Kd, vd.Kdinv),
    }.items():
        report[f"KE=q2EK[{tag}]"] = (K @ E) == (E @ K).scale(q2)
        report[f"KF=q-2FK[{tag}]"] = (K @ F) == (F @ K).scale(q2i)
        report[f"KKinv=1[{tag}]"] = (K @ Kinv) == ident
        comm = (E @ F) - (F @ E)
        report[f"[E,F][{tag}]"] = comm == (K - Kinv).scale(dq)
        report[f"E^p=0[{tag}]"] = E.power(p).is_zero()
        report[f"F^p=0[{tag}]"] = F.power(p).is_zero()
    return report


class PairOp:
    """Operator on two like-colored strands plus its weight-square exponent.

    sq2 is twice the exponent of the global q^(w^2) factor the operator
    contributes (braiding: +1, inverse braiding: -1).
    """

    __slots__ = ("p", "matrix", "sq2")

    def __init__(self, p: int, matrix: OpMatrix, sq2: int):
        self.p = p
        self.matrix = matrix
        self.sq2 = sq2


def _braiding_coeffs(ctx: RingCtx, p: int):
    """c_m = (q - q^(-1))^m / [m]! * q^(m(m-1)/2) for m = 0..p-1."""
    out = []
    dq = ctx.q_pow(1) - ctx.q_pow(-1)
    for m in range(p):
        num = ctx.one()
        for _ in range(m):
            num = num * dq
        c = num * ctx.quantum_factorial(m).inv() * ctx.q_pow(m * (m - 1) // 2)
        out.append(c)
    return out


@lru_cache(maxsize=None)
def braiding_vv(p: int) -> PairOp:
    """Positive crossing on V (x) V: flip of the weight-paired quasi-R action.

    Sends v_i (x) v_j to a combination of v_{j+m} (x) v_{i-m}; every entry
    preserves the index sum i + j.
    """
    ctx = ring(p)
    cm = _braiding_coeffs(ctx, p)
    entries = {}
    for i in range(p):
        for j in range(p):
            col = i * p + j
            for m in range(0, min(i, p - 1 - j) + 1):
                val = LaurentA.const(ctx, cm[m] * ctx.q_pow(2 * (i - m) * (j + m)))
                for s in range(1, m + 1):
                    val = val * LaurentA.weight_bracket(ctx, -i + s)  # E-ladder on slot 1
                qint = ctx.one()
                for s in range(1, m + 1):
                    qint = qint * ctx.quantum_int(j + s)  # F-ladder on slot 2
                val = (val * qint).shift(-(i + j))
                row = (j + m) * p + (i - m)
                if (row, col) in entries:
                    entries[(row, col)] = entries[(row, col)] + val
                else:
                    entries[(row, col)] = val
    return PairOp(p, OpMatrix(p * p, p * p, entries), +1)


@lru_cache(maxsize=None)
def braiding_vv_inv(p: int) -> PairOp:
    """Exact inverse crossing, built from the nilpotent part of the quasi-R matrix.

    The quasi-R operator is 1 + N with N strictly index-shifting (hence
    nilpotent), so its inverse is the finite alternating sum of powers of N;
    the result is certified by braiding * inverse == identity in the tests.
    """
    ctx = ring(p)
    vd = verma(p)
    cm = _braiding_coeffs(ctx, p)
    n2 = p * p
    ident = OpMatrix.identity(n2, LaurentA.one(ctx))

    N = OpMatrix.zero(n2, n2)
    single = OpMatrix.identity(p, LaurentA.one(ctx))
    Em = single
    Fm = single
    for m in range(1, p):
        Em = Em @ vd.E
        Fm = Fm @ vd.F
        N = N + Em.kron(Fm).scale(LaurentA.const(ctx, cm[m]))
    # alternating sum: (1 + N)^(-1) = sum_k (-N)^k, finite since N is nilpotent
    theta_inv = ident
    Npow = ident
    sign = 1
    for _ in range(1, p):
        Npow = Npow @ N
        sign = -sign
        if Npow.is_zero():
            break
        theta_inv = theta_inv + (Npow if sign > 0 else -Npow)

    # weight-pairing inverse: diagonal A^(a+b) q^(-2ab) on v_a (x) v_b
    hinv = {}
    for a in range(p):
        for b in range(p):
            idx = a * p + b
            hinv[(idx, idx)] = LaurentA.mono(ctx, a + b, ctx.q_pow(-2 * a * b))
    Hinv = OpMatrix(n2, n2, hinv)

    tau = {}
    one = LaurentA.one(ctx)
    for a in range(p):
        for b in range(p):
            tau[(b * p + a, a * p + b)] = one
    Tau = OpMatrix(n2, n2, tau)

    return PairOp(p, theta_inv @ Hinv @ Tau, -1)


class Evaluations:
    """The four duality maps for V = V_w in the standard bases.

    Left evaluation/coevaluation are the plain vector-space pairings; the
    right versions carry the pivotal weight K^(1-p).
    """

    def __init__(self, p: int):
        ctx = ring(p)
        self.p = p
        self.ctx = ctx
        one = LaurentA.one(ctx)
        # ev_left: V* (x) V -> C,  v'_i (x) v_j -> delta_ij
        self.ev_left = OpMatrix(1, p * p, {(0, i * p + i): one for i in range(p)})
        # coev_left: C -> V (x) V*,  1 -> sum v_i (x) v'_i
        self.coev_left = OpMatrix(p * p, 1, {(i * p + i, 0): one for i in range(p)})
        # ev_right: V (x) V* -> C,  v_i (x) v'_j -> delta_ij q^((1-p)(w-2i))
        self.ev_right = OpMatrix(
            1,
            p * p,
            {(0, i * p + i): LaurentA.mono(ctx, 1 - p, ctx.q_pow(2 * i * (p - 1))) for i in range(p)},
        )
        # coev_right: C -> V* (x) V,  1 -> sum q^((p-1)(w-2i)) v'_i (x) v_i
        self.coev_right = OpMatrix(
            p * p,
            1,
            {(i * p + i, 0): LaurentA.mono(ctx, p - 1, ctx.q_pow(-2 * i * (p - 1))) for i in range(p)},
        )


@lru_cache(maxsize=None)
def evaluations(p: int) -> Evaluations:
    return Evaluations(p)


@lru_cache(maxsize=None)
def pivotal_j(p: int) -> OpMatrix:
    """Diagonal isomorphism V** -> V with entries q^((p-1)(w-2i))."""
    ctx = ring(p)
    return OpMatrix(
        p,
        p,
        {(i, i): LaurentA.mono(ctx, p - 1, ctx.q_pow(-2 * i * (p - 1))) for i in range(p)},
    )


def _kink(p: int, positive: bool) -> OpMatrix:
    """Single curl on one strand: (id (x) right-ev) (crossing (x) id) (id (x) left-coev)."""
    ctx = ring(p)
    cr = braiding_vv(p) if positive else braiding_vv_inv(p)
    ev = evaluations(p)
    out = {}
    for a in range(p):
        # feed v_a (x) sum_i v_i (x) v'_i, braid slots 1-2, close slots 2-3
        acc: dict = {}
        for i in range(p):
            for r, v in cr.matrix.col(a * p + i).items():
                out1, out2 = divmod(r, p)
                if out2 != i:
                    continue  # right evaluation pairs slot 2 with v'_i
                w = v * ev.ev_right.entries[(0, i * p + i)]
                s = acc.get(out1)
                acc[out1] = w if s is None else s + w
        for r, v in acc.items():
            if not v.is_zero():
                out[(r, a)] = v
    return OpMatrix(p, p, out)


@lru_cache(maxsize=None)
def twist_scalar(p: int) -> ScaledLaurent:
    """The curl scalar on V, with its weight-square half-exponent.

    Composes one positive curl from the braiding and the duality maps,
    asserts the result is scalar, and returns that scalar.  The doubled
    weight-square exponent it carries (+1, i.e. q^(w^2/2)) is the engine's
    per-crossing constant.
    """
    p_ = p
    mat = _kink(p_, positive=True)
    ctx = ring(p_)
    diag = mat.entries.get((0, 0), LaurentA(ctx))
    for r in range(p_):
        for c in range(p_):
            want = diag if r == c else LaurentA(ctx)
            got = mat.entries.get((r, c), LaurentA(ctx))
            if got != want:
                raise NonScalarTwist(f"curl matrix not scalar at ({r},{c})")
    return ScaledLaurent(+1, diag)


def _y_actions(p: int):
    """E, F, K acting on Y = V* (x) V through the coproduct."""
    vd = verma(p)
    ctx = vd.ctx
    ident = OpMatrix.identity(p, LaurentA.one(ctx))
    E_Y = vd.Ed.kron(vd.K) + ident.kron(vd.E)
    F_Y = vd.Kdinv.kron(vd.F) + vd.Fd.kron(ident)
    K_Y = vd.Kd.kron(vd.K)
    return E_Y, F_Y, K_Y


def _y_weight(p: int, idx: int) -> int:
    """Integer weight of the basis vector v'_a (x) v_b of Y, idx = a*p + b."""
    a, b = divmod(idx, p)
    return 2 * (a - b)


@lru_cache(maxsize=None)
def ribbon_on_Y(p: int):
    """Ribbon action and its inverse on Y = V* (x) V, as exact matrices.

    The grouplike k of order 4p acts on a weight-m vector by zeta^m; summing
    the two grouplike indices against zeta^(-ij) collapses to the diagonal
    weight factors used below (the literal double sum is checked in tests).
    """
    ctx = ring(p)
    E_Y, F_Y, K_Y = _y_actions(p)
    cm = _braiding_coeffs(ctx, p)
    n2 = p * p
    ident = OpMatrix.identity(n2, LaurentA.one(ctx))

    # K_Y is diagonal and constant in the color symbol; take its (1-p) power.
    k1mp = {}
    for idx in range(n2):
        w = _y_weight(p, idx)
        k1mp[(idx, idx)] = LaurentA.const(ctx, ctx.q_pow(w * (1 - p)))
    K1mp = OpMatrix(n2, n2, k1mp)

    theta = OpMatrix.zero(n2, n2)
    theta_inv = OpMatrix.zero(n2, n2)
    Em = ident
    Fm = ident
    for m in range(p):
        if m:
            Em = Em @ E_Y
            Fm = Fm @ F_Y
        core = Fm @ K1mp @ Em
        # theta: column factor zeta^(w(w+2m)) on weight-w input
        scaled = {}
        for (r, c), v in core.entries.items():
            w = _y_weight(p, c)
            scaled[(r, c)] = v * (cm[m] * ctx.zeta_pow(w * (w + 2 * m)))
        theta = theta + OpMatrix(n2, n2, scaled)

        # inverse ribbon: S(k^j E^m) K^(1-p) k^i F^m summed over i, j
        # S(E)^m = (-1)^m q^(-m(m-1)) E^m K^(-m); the grouplike sums collapse
        # to zeta^(-(w-2m)^2) on a weight-w input column.
        Km = ident
        for _ in range(m):
            Km = Km @ OpMatrix(
                n2, n2, {(i, i): LaurentA.const(ctx, ctx.q_pow(-_y_weight(p, i))) for i in range(n2)}
            )
        core_inv = Em @ Km @ K1mp @ Fm
        sign = ctx.one() if m % 2 == 0 else -ctx.one()
        pref = cm[m] * sign * ctx.q_pow(-m * (m - 1))
        scaled_inv = {}
        for (r, c), v in core_inv.entries.items():
            w = _y_weight(p, c)
            scaled_inv[(r, c)] = v * (pref * ctx.zeta_pow(-((w - 2 * m) ** 2)))
        theta_inv = theta_inv + OpMatrix(n2, n2, scaled_inv)

    return theta, theta_inv


def hopf_body(p: int, sign: int) -> LaurentA:
    """The Hopf-link invariant as a Laurent polynomial in the color symbol.

    sign +1: sum_i A^(p-1-2i) q^(-2i);  sign -1: the same with q^(-2(1+i)).
    """
    ctx = ring(p)
    out = LaurentA(ctx)
    for i in range(p):
        shift = -2 * i if sign > 0 else -2 * (1 + i)
        out = out + LaurentA.mono(ctx, p - 1 - 2 * i, ctx.q_pow(shift))
    return out


def lemma_suite(p: int) -> dict:
    """Ladder-operator identities on Y used by the top-term analysis."""
    ctx = ring(p)
    E_Y, F_Y, _ = _y_actions(p)
    Ep1 = E_Y.power(p - 1) if p > 1 else OpMatrix.identity(p * p, LaurentA.one(ctx))
    Fp1 = F_Y.power(p - 1) if p > 1 else OpMatrix.identity(p * p, LaurentA.one(ctx))
    report = {}

    ok = True
    for i in range(p):
        for j in range(p):
            col = Ep1.col(i * p + j)
            if j < i and col:
                ok = False
            col = Fp1.col(i * p + j)
            if j > i and col:
                ok = False
    report["annihilation_off_diagonal"] = ok

    prod = LaurentA.one(ctx)
    for s in range(p - 1):
        prod = prod * LaurentA.weight_bracket(ctx, -s)
    ok = True
    target_row = (p - 1) * p + 0
    for i in range(p):
        col = Ep1.col(i * p + i)
        if set(col) != {target_row} or col[target_row] != prod:
            ok = False
    report["raising_diagonal_product"] = ok

    fact = ctx.quantum_factorial(p - 1)
    coev = evaluations(p).coev_right
    want = {r: v * LaurentA.const(ctx, fact) for (r, _), v in coev.entries.items()}
    got = Fp1.col((p - 1) * p + 0)
    report["lowering_hits_coevaluation"] = got == {r: v for r, v in want.items() if not v.is_zero()}
    return report


def top_decomposition_check(p: int) -> dict:
    """Ribbon = Hopf-value * (coev o ev) + remainder of low square-free degree.

    The remainder entries must be plain polynomials in A^2 with exponents in
    {0, 2, ..., 2(p-2)}; offending entries raise DecompositionFailure.
    """
    ctx = ring(p)
    theta, theta_inv = ribbon_on_Y(p)
    ev = evaluations(p)
    ce = ev.coev_right @ ev.ev_left  # Y -> Y
    bad = []
    for tag, mat, hopf_sign in (("ribbon", theta, -1), ("ribbon_inv", theta_inv, +1)):
        B = mat - ce.scale(hopf_body(p, hopf_sign))
        for (r, c), v in B.entries.items():
            for e in v.terms:
                if e < 0 or e > 2 * (p - 2) or e % 2 != 0:
                    bad.append((tag, r, c, e))
    if bad:
        raise DecompositionFailure(f"entries outside allowed window: {bad[:10]}")
    return {"ribbon": True, "ribbon_inv": True}
