"""Evaluate braid closures: graded operator products, cut-strand trace, output.

A link enters as a braid whose closure it is; every strand carries the same
generic-weight Verma module oriented upward.  The engine multiplies the
elementary crossing operators (which preserve the index-sum grading), closes
all strands but the first with the pivotal weight inserted, asserts the
resulting endomorphism of the open strand is scalar, and normalizes the
scalar into the symmetric x-polynomial.

The conventions the definition leaves open (pivotal sign, direction of the
writhe correction, a possible unit per crossing, which Hopf chirality the
positive generator closes to) are fixed once per root order by calibrate():
the unknot, Hopf-link and trefoil gates determine them uniquely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from adoknot.algebra import braiding_vv, braiding_vv_inv, hopf_body
from adoknot.cyclo import CycloNum, ring
from adoknot.errors import (
    CalibrationFailure,
    NonPureScale,
    NonScalarResult,
    ParityError,
    RecordInvalid,
)
from adoknot.linalg import OpMatrix
from adoknot.symbolic import AdoPoly, LaurentA, ScaledLaurent, degree_data, is_symmetric, to_x
from adoknot.cyclo import in_zq2


class BraidWord:
    """A word in the Artin generators: letter k means sigma_|k| with sign(k)."""

    __slots__ = ("strands", "letters")

    def __init__(self, strands: int, letters):
        if strands < 1:
            raise ValueError("strand count must be >= 1")
        letters = tuple(int(x) for x in letters)
        for x in letters:
            if x == 0 or abs(x) >= strands:
                raise ValueError(f"letter {x} invalid for {strands} strands")
        self.strands = strands
        self.letters = letters

    @property
    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> list[int]:
        """Image of each strand position under the braid, 0-indexed."""
        perm = list(range(self.strands))
        for x in self.letters:
            k = abs(x) - 1
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
        return perm

    def components(self) -> int:
        """Number of cycles of the closure permutation."""
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for start in range(self.strands):
            if seen[start]:
                continue
            count += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
        return count

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, [-x for x in self.letters])

    def __repr__(self):
        return f"BraidWord(strands={self.strands}, letters={list(self.letters)})"


class GradedOp:
    """Operator on the n-fold tensor power, entries Laurent in the color symbol.

    Rows and columns are base-p encodings of index tuples (first strand is
    the most significant digit).  Crossings preserve the digit sum, so the
    stored entries automatically stay within the index-sum blocks; sq2
    accumulates the doubled weight-square exponent of the crossings.
    """

    __slots__ = ("p", "n", "entries", "sq2")

    def __init__(self, p: int, n: int, entries: dict, sq2: int):
        self.p = p
        self.n = n
        self.entries = entries
        self.sq2 = sq2

    def blocks(self) -> dict:
        """Entries regrouped by index-sum grade (diagnostics / tests)."""
        p, n = self.p, self.n

        def grade(state: int) -> int:
            g = 0
            for _ in range(n):
                state, r = divmod(state, p)
                g += r
            return g

        out: dict = {}
        for (r, c), v in self.entries.items():
            out.setdefault(grade(c), {})[(r, c)] = v
        return out


def eval_braid(p: int, braid: BraidWord) -> GradedOp:
    """Ordered product of elementary crossing operators on the tensor power."""
    ctx = ring(p)
    n = braid.strands
    dim = p**n
    acc = {(s, s): LaurentA.one(ctx) for s in range(dim)}
    sq2 = 0
    for letter in braid.letters:
        pos = abs(letter) - 1
        cr = braiding_vv(p) if letter > 0 else braiding_vv_inv(p)
        sq2 += cr.sq2
        acc = _apply_crossing(p, cr.matrix, acc, lo_w=p ** (n - pos - 2))
    return GradedOp(p, n, acc, sq2)


def _apply_crossing(p: int, cmat: OpMatrix, acc: dict, lo_w: int) -> dict:
    """Left-multiply the accumulated operator by id (x) crossing (x) id.

    lo_w is the positional weight of the second digit of the acted-on pair;
    the pair value occupies state // lo_w mod p^2.
    """
    cols = {}
    for c in range(p * p):
        col = cmat.col(c)
        if col:
            cols[c] = list(col.items())
    hi_w = lo_w * p * p
    out: dict = {}
    for (r, c), v in acc.items():
        hi, rest = divmod(r, hi_w)
        pair, lo = divmod(rest, lo_w)
        base = hi * hi_w + lo
        for r2, w in cols.get(pair, ()):
            key = (base + r2 * lo_w, c)
            prod = w * v
            s = out.get(key)
            s = prod if s is None else s + prod
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def close_and_cut(p: int, op: GradedOp, piv_sign: int) -> ScaledLaurent:
    """Quantum partial trace over strands 2..n, then the scalar assertion.

    Each closed strand carries the diagonal pivotal weight K^(piv_sign(p-1)),
    i.e. entry A^(piv_sign(p-1)) q^(-2 i piv_sign (p-1)) on index i.  Strands
    are contracted from the last inward, shrinking the operator each time.
    """
    ctx = ring(p)
    piv = [
        LaurentA.mono(ctx, piv_sign * (p - 1), ctx.q_pow(-2 * i * piv_sign * (p - 1)))
        for i in range(p)
    ]
    entries = op.entries
    for _ in range(op.n - 1):
        nxt: dict = {}
        for (r, c), v in entries.items():
            r1, i = divmod(r, p)
            c1, j = divmod(c, p)
            if i != j:
                continue
            key = (r1, c1)
            w = v * piv[i]
            s = nxt.get(key)
            s = w if s is None else s + w
            if s.is_zero():
                nxt.pop(key, None)
            else:
                nxt[key] = s
        entries = nxt
    zero = LaurentA(ctx)
    diag = entries.get((0, 0), zero)
    for r in range(p):
        for c in range(p):
            got = entries.get((r, c), zero)
            want = diag if r == c else zero
            if got != want:
                raise NonScalarResult(f"closure endomorphism not scalar at ({r},{c})")
    return ScaledLaurent(op.sq2, diag)


@dataclass
class CalibrationReport:
    """Convention constants fixed by the unknot, Hopf and trefoil gates."""

    p: int
    kappa2: int  # doubled weight-square exponent per positive crossing
    piv_sign: int  # sign of the pivotal weight exponent on closed strands
    c_norm: int  # sign of the (p-1)*w color-exponent correction
    unit: CycloNum  # extra unit multiplied per writhe count
    pos_is_hopf: int  # +1 if the sigma^2 closure equals the positive Hopf form
    trefoil_printed: bool | None  # p=4 only: sigma^3 matches the table row directly
    tried: list = field(default_factory=list)


def _normalize_with(ctx, alpha: ScaledLaurent, w: int, s: int, kappa2: int, c_norm: int, unit):
    sq = alpha.sq2 - w * kappa2
    if sq != 0:
        raise NonPureScale(f"weight-square exponent {sq}/2 after framing correction")
    body = alpha.body.shift(c_norm * (ctx.p - 1) * w)
    u = ctx.one()
    for _ in range(abs(w)):
        u = u * unit
    if w < 0:
        u = u.inv()
    body = body * u
    return to_x(ScaledLaurent(0, body), ctx, s)


def _hopf_x(p: int, sign: int) -> AdoPoly:
    """Closed-form Hopf-link polynomial in x: every coefficient is -q^(sign)."""
    ctx = ring(p)
    coeff = -ctx.q_pow(1 if sign > 0 else -1)
    return AdoPoly(ctx, 2, {e: coeff for e in range(-(p - 1), p, 2)})


# positive part of the p=4 invariant of the trefoil as printed in the
# reference table; used only to record which chirality the positive braid
# word produces (a, b) meaning a + b*q^2.
_TREFOIL_P4 = {0: (1, 2), 2: (1, 1), 4: (0, 1), 6: (0, 1)}


@lru_cache(maxsize=None)
def calibrate(p: int) -> CalibrationReport:
    """Fix (kappa2, pivot sign, writhe correction, unit, chirality) for one p.

    Gates: (i) both one-crossing closures of the unknot normalize to 1,
    (ii) the two double-crossing closures reproduce the two Hopf-link closed
    forms in some order, (iii) at p = 4 the triple-crossing closure is
    compared against the reference trefoil row to record the mirror
    convention.  The search is exhaustive over the small candidate set and
    fails hard if nothing passes.
    """
    ctx = ring(p)
    tried = []
    b1 = BraidWord(2, [1])
    b1m = BraidWord(2, [-1])
    b2 = BraidWord(2, [1, 1])
    b2m = BraidWord(2, [-1, -1])
    kappa2 = braiding_vv(p).sq2

    for piv_sign in (+1, -1):
        try:
            a1 = close_and_cut(p, eval_braid(p, b1), piv_sign)
            a1m = close_and_cut(p, eval_braid(p, b1m), piv_sign)
            a2 = close_and_cut(p, eval_braid(p, b2), piv_sign)
            a2m = close_and_cut(p, eval_braid(p, b2m), piv_sign)
        except NonScalarResult:
            tried.append((piv_sign, None, "closure not scalar"))
            continue
        for c_norm in (+1, -1):
            shifted = a1.body.shift(c_norm * (p - 1))
            if set(shifted.terms) != {0}:
                tried.append((piv_sign, c_norm, "unknot gate: residual color exponent"))
                continue
            u1 = shifted.terms[0]
            unit = u1.inv()
            if not _is_root_of_unity(unit):
                tried.append((piv_sign, c_norm, "unknot gate: non-unit residue"))
                continue
            try:
                n_plus = _normalize_with(ctx, a1, 1, 1, kappa2, c_norm, unit)
                n_minus = _normalize_with(ctx, a1m, -1, 1, kappa2, c_norm, unit)
                one = AdoPoly(ctx, 1, {0: ctx.one()})
                if n_plus != one or n_minus != one:
                    tried.append((piv_sign, c_norm, "unknot gate: value != 1"))
                    continue
                h_pos = _normalize_with(ctx, a2, 2, 2, kappa2, c_norm, unit)
                h_neg = _normalize_with(ctx, a2m, -2, 2, kappa2, c_norm, unit)
            except (NonPureScale, ParityError) as exc:
                tried.append((piv_sign, c_norm, f"gate error: {exc}"))
                continue
            hp, hm = _hopf_x(p, +1), _hopf_x(p, -1)
            if h_pos == hp and h_neg == hm:
                pos_is_hopf = +1
            elif h_pos == hm and h_neg == hp:
                pos_is_hopf = -1
            else:
                tried.append((piv_sign, c_norm, "hopf gate: no chirality assignment"))
                continue
            trefoil_printed = None
            if p == 4:
                a3 = close_and_cut(p, eval_braid(p, BraidWord(2, [1, 1, 1])), piv_sign)
                t3 = _normalize_with(ctx, a3, 3, 1, kappa2, c_norm, unit)
                want = {}
                for e, (re_, im_) in _TREFOIL_P4.items():
                    cval = ctx.from_rational(re_) + ctx.q_pow(2) * im_
                    want[e] = cval
                    if e:
                        want[-e] = cval
                trefoil_printed = t3 == AdoPoly(ctx, 1, want)
            return CalibrationReport(
                p=p,
                kappa2=kappa2,
                piv_sign=piv_sign,
                c_norm=c_norm,
                unit=unit,
                pos_is_hopf=pos_is_hopf,
                trefoil_printed=trefoil_printed,
                tried=tried,
            )
    raise CalibrationFailure(f"no convention assignment passes the gates at p={p}; tried {tried}")


def _is_root_of_unity(u: CycloNum) -> bool:
    ctx = u.ctx
    return any(u == ctx.zeta_pow(k) or u == -ctx.zeta_pow(k) for k in range(ctx.order))


def normalize(p: int, alpha: ScaledLaurent, w: int, s: int) -> AdoPoly:
    """Framing correction and conversion to the symmetric x-polynomial."""
    cal = calibrate(p)
    return _normalize_with(ring(p), alpha, w, s, cal.kappa2, cal.c_norm, cal.unit)


@dataclass
class AdoResult:
    """A computed invariant with its consistency flags."""

    poly: AdoPoly
    p: int
    braid: BraidWord
    writhe: int
    components: int
    checks: dict

    def to_json(self) -> dict:
        from adoknot.symbolic import ado_to_json

        return {
            "invariant": ado_to_json(self.poly),
            "p": self.p,
            "braid": {"strands": self.braid.strands, "letters": list(self.braid.letters)},
            "writhe": self.writhe,
            "components": self.components,
            "checks": dict(self.checks),
        }


def compute_ado(
    p: int,
    braid: BraidWord,
    expected_components: int | None = None,
    engine: str = "auto",
) -> AdoResult:
    """Full pipeline: braid product, cut-strand closure, normalization, checks."""
    if expected_components is not None and braid.components() != expected_components:
        raise RecordInvalid(
            f"declared {expected_components} components, closure has {braid.components()}"
        )
    cal = calibrate(p)
    ctx = ring(p)
    s = braid.components()
    w = braid.writhe
    if engine == "auto":
        engine = "fast" if p**braid.strands > 128 and braid.letters else "symbolic"
    if engine == "symbolic" or not braid.letters:
        alpha = close_and_cut(p, eval_braid(p, braid), cal.piv_sign)
    elif engine == "fast":
        from adoknot.fastengine import fast_closure

        body = fast_closure(p, braid, cal.piv_sign)
        alpha = ScaledLaurent(w * cal.kappa2, body)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    poly = _normalize_with(ctx, alpha, w, s, cal.kappa2, cal.c_norm, cal.unit)
    checks = {
        "symmetric": is_symmetric(poly),
        "integral": all(in_zq2(c) for c in poly.terms.values()),
        "scalar_matrix": True,  # close_and_cut raised otherwise
    }
    return AdoResult(poly=poly, p=p, braid=braid, writhe=w, components=s, checks=checks)
