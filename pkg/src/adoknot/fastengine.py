"""Accelerated braid closure evaluation for larger tensor powers.

The symbolic engine multiplies Laurent-polynomial matrices directly, which is
fine up to three strands but too slow beyond.  This module computes the same
closure scalar exactly by a standard multi-modular scheme:

  * the color symbol A is specialized at D+1 integer sample points, where
    [lo, hi] (D = hi - lo) is a window certified to contain the A-support of
    the closure scalar (sum of the per-crossing entry supports plus the
    pivotal shift, all read off the exact crossing matrices);
  * the cyclotomic coefficients are split into phi(4p) embeddings zeta ->
    omega^u modulo primes  ell = 1 (mod 4p), so every sweep works on int64
    numpy arrays over the index-sum blocks;
  * per-point values are interpolated modulo each prime, coordinates are
    recovered from the embeddings by a precomputed inverse Vandermonde,
    lifted by balanced CRT, and the lift is certified against an extra prime
    that took no part in the reconstruction.

Crossing matrices for the root orders used here have cyclotomic-integer
entries, so the reconstructed coefficients are integers; this is asserted.
The per-strand-index diagonal sums are reconstructed separately and compared,
which reproduces the scalar-endomorphism assertion of the symbolic path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import gcd

import numpy as np

from adoknot.algebra import braiding_vv, braiding_vv_inv
from adoknot.cyclo import CycloNum, ring
from adoknot.errors import NonScalarResult
from adoknot.symbolic import LaurentA


def _primes_for(p: int, count: int, start: int = 1 << 20):
    """First `count` primes = 1 (mod 4p) at or above `start`."""
    out = []
    m = 4 * p
    cand = start + ((1 - start) % m)
    while len(out) < count:
        if cand > 1 and _is_prime(cand):
            out.append(cand)
        cand += m
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _root_of_order(ell: int, m: int) -> int:
    """An element of exact multiplicative order m in F_ell (requires m | ell-1)."""
    for g in range(2, ell):
        w = pow(g, (ell - 1) // m, ell)
        if all(pow(w, m // r, ell) != 1 for r in _prime_factors(m)):
            return w
    raise ArithmeticError("no primitive root found")


def _prime_factors(m: int):
    out = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.add(d)
            m //= d
        d += 1
    if m > 1:
        out.add(m)
    return out


def _laurent_support(mat) -> tuple[int, int]:
    lo = min(min(v.terms) for v in mat.entries.values())
    hi = max(max(v.terms) for v in mat.entries.values())
    return lo, hi


@lru_cache(maxsize=None)
def _crossing_tables(p: int, positive: bool):
    """Per input pair index: list of (shift class, out pair, coefficient).

    The shift class separates branches so that within one class the map
    input pair -> output pair is injective (needed for vectorized adds).
    """
    cr = braiding_vv(p) if positive else braiding_vv_inv(p)
    table: list[list] = [[] for _ in range(p * p)]
    for (r, c), v in cr.matrix.entries.items():
        i, j = divmod(c, p)
        shift = i - (r % p)  # how far the pair indices moved
        table[c].append((shift, r, v))
    return table, _laurent_support(cr.matrix)


class _BlockPlan:
    """State bookkeeping for one strand count: index-sum blocks and positions."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        states: dict[int, list[int]] = {}
        for digits in iproduct(range(p), repeat=n):
            s = 0
            for d in digits:
                s = s * p + d
            states.setdefault(sum(digits), []).append(s)
        self.block_states = {g: sorted(v) for g, v in states.items()}
        self.local = {}
        for g, sts in self.block_states.items():
            for k, s in enumerate(sts):
                self.local[s] = (g, k)


def fast_closure(
    p: int,
    braid,
    piv_sign: int,
    n_primes: int = 3,
    window: tuple[int, int] | None = None,
) -> LaurentA:
    """The closure scalar of the braid as an exact Laurent polynomial in A.

    Equivalent to close_and_cut(eval_braid(...)).body; the weight-square
    exponent is not tracked here (the caller knows it is writhe * kappa2).
    """
    ctx = ring(p)
    n = braid.strands
    if n == 1:
        return LaurentA.one(ctx)

    # certified A-support window for the closure scalar
    if window is None:
        lo = hi = piv_sign * (p - 1) * (n - 1)
        for letter in braid.letters:
            _, (l2, h2) = _crossing_tables(p, letter > 0)
            lo += l2
            hi += h2
    else:
        lo, hi = window
    npts = hi - lo + 2  # one spare point doubles as an in-prime certificate

    dimE = ctx.dim
    units = [u for u in range(4 * p) if gcd(u, 4 * p) == 1]
    assert len(units) == dimE
    primes = _primes_for(p, n_primes + 1)
    check_prime = primes[-1]
    plan = _BlockPlan(p, n)

    # per-strand-index diagonal sums, reconstructed independently for the
    # scalar assertion: diag_vals[a][prime][point][embedding]
    per_a_polys = []
    residues: dict[int, list] = {}
    for ell in primes:
        residues[ell] = _sweep_all_points(ctx, braid, plan, piv_sign, ell, units, npts, lo)

    # reconstruct each diagonal entry's polynomial and compare
    recon = [
        _reconstruct(ctx, {ell: residues[ell][a] for ell in primes[:-1]},
                     {ell: residues[ell][a] for ell in [check_prime]},
                     primes, lo, hi, units, p, npts)
        for a in range(p)
    ]
    for a in range(1, p):
        if recon[a] != recon[0]:
            raise NonScalarResult(f"diagonal entries 0 and {a} of the closure differ")
    return recon[0]


def _sweep_all_points(ctx, braid, plan, piv_sign, ell, units, npts, lo):
    """All sample-point sweeps for one prime; returns [a][point][embedding] ints."""
    p = ctx.p
    n = braid.strands
    omega = _root_of_order(ell, 4 * p)
    emb = [pow(omega, u, ell) for u in units]
    dimE = len(emb)

    # crossing coefficient tables evaluated per embedding as functions of A
    # (A-specialized later per point): keep symbolic terms, evaluate fast.
    def eval_coeff(v: LaurentA, a_val: int, e_idx: int) -> int:
        z = emb[e_idx]
        acc = 0
        a_inv = pow(a_val, ell - 2, ell)
        for expo, c in v.terms.items():
            av = pow(a_val, expo, ell) if expo >= 0 else pow(a_inv, -expo, ell)
            cv = 0
            for j, fr in enumerate(c.coords):
                if fr:
                    num = fr.numerator % ell
                    den = pow(fr.denominator, ell - 2, ell)
                    cv = (cv + num * den % ell * pow(z, j, ell)) % ell
            acc = (acc + av * cv) % ell
        return acc

    # precompute per-letter branch index maps per block, grouped by shift
    # class so destination rows are distinct within each vectorized add
    letters = braid.letters
    branch_cache: dict = {}
    for letter in set(letters):
        tbl, _ = _crossing_tables(p, letter > 0)
        distinct: list = []
        val_idx: dict = {}
        for col in tbl:
            for _, _, val in col:
                if id(val) not in val_idx:
                    val_idx[id(val)] = len(distinct)
                    distinct.append(val)
        pos = abs(letter) - 1
        lo_w = p ** (n - pos - 2)
        hi_w = lo_w * p * p
        per_block = {}
        for g, sts in plan.block_states.items():
            idx_of = {s: k for k, s in enumerate(sts)}
            branches: dict = {}
            for k, s in enumerate(sts):
                hirest, rest = divmod(s, hi_w)
                pair, lo_d = divmod(rest, lo_w)
                base = hirest * hi_w + lo_d
                for shift, rpair, val in tbl[pair]:
                    b = branches.setdefault(shift, ([], [], []))
                    b[0].append(k)
                    b[1].append(idx_of[base + rpair * lo_w])
                    b[2].append(val_idx[id(val)])
            per_block[g] = [
                (
                    np.array(src, dtype=np.int64),
                    np.array(dst, dtype=np.int64),
                    np.array(vidx, dtype=np.int64),
                )
                for (src, dst, vidx) in branches.values()
            ]
        branch_cache[letter] = (distinct, per_block)

    # diagonal gather indices: for each a, per grade g, local indices of
    # states with leading digit a, and the pivot weight exponent sum
    lead_w = p ** (n - 1)
    diag_idx: dict = {}
    for g, sts in plan.block_states.items():
        for k, s in enumerate(sts):
            a = s // lead_w
            diag_idx.setdefault((a, g), []).append(k)
    diag_idx = {k: np.array(v, dtype=np.int64) for k, v in diag_idx.items()}

    out = [[None] * npts for _ in range(p)]
    for pt in range(npts):
        a_val = pt + 1
        acc = {
            g: np.stack([np.eye(len(sts), dtype=np.int64)] * len(emb), axis=-1)
            for g, sts in plan.block_states.items()
        }
        etable = {
            letter: np.array(
                [[eval_coeff(v, a_val, e) for e in range(dimE)] for v in branch_cache[letter][0]],
                dtype=np.int64,
            )
            for letter in set(letters)
        }
        for letter in letters:
            _, per_block = branch_cache[letter]
            table = etable[letter]
            for g in acc:
                mat = acc[g]
                new = np.zeros_like(mat)
                for src, dst, vidx in per_block[g]:
                    new[dst] = (new[dst] + table[vidx][:, None, :] * mat[src]) % ell
                acc[g] = new
        # pivotal weights: product over closed strands of
        # A^(piv_sign(p-1)) q^(-2 i piv_sign (p-1)) depends only on the
        # closed-strand index sum g - a.
        apow = pow(a_val if piv_sign > 0 else pow(a_val, ell - 2, ell), (p - 1) * (n - 1), ell)
        for a in range(p):
            totals = np.zeros(len(emb), dtype=np.int64)
            for g, mat in acc.items():
                sel = diag_idx.get((a, g))
                if sel is None:
                    continue
                dsum = mat[sel, sel, :].sum(axis=0) % ell
                qexp = -2 * (g - a) * piv_sign * (p - 1)
                qfac = np.array(
                    [pow(emb[e], (2 * qexp) % (4 * p), ell) for e in range(len(emb))],
                    dtype=np.int64,
                )
                totals = (totals + dsum * qfac) % ell
            out[a][pt] = [int(x * apow % ell) for x in totals]
    return out


def _reconstruct(ctx, main_res, check_res, primes, lo, hi, units, p, npts):
    """Interpolate mod each prime, solve embeddings, CRT-lift, certify."""
    D = hi - lo
    dimE = len(units)
    coeff_mod: dict[int, list[list[int]]] = {}
    for ell, vals in main_res.items():
        pts = [(i + 1) % ell for i in range(npts)]
        # clear the Laurent offset: interpolate f(a) * a^(-lo), a polynomial
        shift = [pow(i + 1, -lo, ell) if lo <= 0 else pow(pow(i + 1, ell - 2, ell), lo, ell) for i in range(npts)]
        per_emb = []
        for e in range(dimE):
            ys = [vals[i][e] * shift[i] % ell for i in range(npts)]
            cs = _interp_mod(pts[: D + 1], ys[: D + 1], ell)
            # in-prime certificate: the spare point must evaluate consistently
            extra = 0
            xpow = 1
            for c in cs:
                extra = (extra + c * xpow) % ell
                xpow = xpow * pts[D + 1] % ell
            if extra != ys[D + 1]:
                raise ArithmeticError("interpolation window too small for closure scalar")
            per_emb.append(cs)
        # embeddings -> zeta-coordinates: solve V x = y with V[t][j] = emb_t^j
        omega = _root_of_order(ell, 4 * p)
        emb = [pow(omega, u, ell) for u in units]
        Vinv = _mat_inv_mod([[pow(emb[t], j, ell) for j in range(dimE)] for t in range(dimE)], ell)
        coeffs = []
        for k in range(D + 1):
            y = [per_emb[e][k] for e in range(dimE)]
            coeffs.append([sum(Vinv[j][t] * y[t] for t in range(dimE)) % ell for j in range(dimE)])
        coeff_mod[ell] = coeffs

    # balanced CRT across the main primes
    main = list(main_res)
    M = 1
    for ell in main:
        M *= ell
    terms = {}
    for k in range(D + 1):
        coords = []
        for j in range(dimE):
            x = 0
            for ell in main:
                r = coeff_mod[ell][k][j]
                Mi = M // ell
                x = (x + r * Mi * pow(Mi, -1, ell)) % M
            if x > M // 2:
                x -= M
            coords.append(x)
        if any(coords):
            terms[lo + k] = CycloNum(ctx, tuple(Fraction(c) for c in coords))
    body = LaurentA(ctx, terms)

    # certify against the held-out prime
    (ell_c, vals_c), = check_res.items()
    omega = _root_of_order(ell_c, 4 * p)
    emb = [pow(omega, u, ell_c) for u in units]
    for i in (0, D // 2, D + 1):
        a_val = i + 1
        for e in range(dimE):
            z = emb[e]
            want = vals_c[i][e]
            got = 0
            a_inv = pow(a_val, ell_c - 2, ell_c)
            for expo, c in body.terms.items():
                av = pow(a_val, expo, ell_c) if expo >= 0 else pow(a_inv, -expo, ell_c)
                cv = 0
                for j, fr in enumerate(c.coords):
                    if fr:
                        cv = (cv + fr.numerator % ell_c * pow(z, j, ell_c)) % ell_c
                got = (got + av * cv) % ell_c
            if got != want:
                raise ArithmeticError("CRT lift failed certification against held-out prime")
    return body


def _interp_mod(xs, ys, ell):
    """Coefficients (low first) of the unique degree < len(xs) polynomial mod ell."""
    k = len(xs)
    # full product poly P(x) = prod (x - x_i)
    P = [1]
    for x in xs:
        P = _poly_shift_mul(P, x, ell)
    out = [0] * k
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        Qi = _poly_div_linear(P, xi, ell)  # P / (x - xi)
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                denom = denom * (xi - xj) % ell
        f = yi * pow(denom, ell - 2, ell) % ell
        for d in range(k):
            out[d] = (out[d] + f * Qi[d]) % ell
    return out


def _poly_shift_mul(P, x, ell):
    """P(t) * (t - x) mod ell, low-first coefficients."""
    out = [0] * (len(P) + 1)
    for i, c in enumerate(P):
        out[i + 1] = (out[i + 1] + c) % ell
        out[i] = (out[i] - x * c) % ell
    return out


def _poly_div_linear(P, x, ell):
    """P(t) / (t - x) mod ell by synthetic division (exact)."""
    n = len(P) - 1
    out = [0] * n
    carry = 0
    for i in range(n - 1, -1, -1):
        carry = (P[i + 1] + carry * x) % ell
        out[i] = carry
    return out


def _mat_inv_mod(M, ell):
    n = len(M)
    A = [[M[i][j] % ell for j in range(n)] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], ell - 2, ell)
        A[col] = [v * inv % ell for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [(v - f * w) % ell for v, w in zip(A[r], A[col])]
    return [row[n:] for row in A]
