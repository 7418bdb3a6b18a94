#!/usr/bin/env python3
"""Braid-word search tool (development only, not part of the package).

Finds braid words whose closures have a prescribed Alexander polynomial, via
the reduced Burau determinant formula; candidates are then verified against
the engine elsewhere.  Words are sampled from shape families typical of
census presentations.
"""

import argparse
import itertools
import random
import sys
from collections import Counter

sys.path.insert(0, "src")


# -- integer Laurent polynomials as dicts exp -> int ---------------------------

def lmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def ladd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
        if not out[e]:
            del out[e]
    return out


def lneg(a):
    return {e: -c for e, c in a.items()}


ONE = {0: 1}
T = {1: 1}
TI = {-1: 1}


def burau_gen(n, i, inverse=False):
    """Reduced Burau matrix of sigma_i (1-indexed) in B_n, (n-1)x(n-1)."""
    m = [[dict() for _ in range(n - 1)] for _ in range(n - 1)]
    for k in range(n - 1):
        m[k][k] = dict(ONE)
    k = i - 1  # 0-indexed row/col of f_i
    if not inverse:
        m[k][k] = {1: -1}  # f_i -> -t f_i
        if k - 1 >= 0:
            m[k][k - 1] = dict(T)  # f_{i-1} -> f_{i-1} + t f_i
        if k + 1 <= n - 2:
            m[k][k + 1] = dict(ONE)  # f_{i+1} -> f_i + f_{i+1}
    else:
        m[k][k] = {-1: -1}
        if k - 1 >= 0:
            m[k][k - 1] = dict(ONE)
        if k + 1 <= n - 2:
            m[k][k + 1] = dict(TI)
    return m


def mat_mul(A, B):
    n = len(A)
    return [
        [
            {e: c for e, c in _sum_prod(A, B, r, c, n).items() if c}
            for c in range(n)
        ]
        for r in range(n)
    ]


def _sum_prod(A, B, r, c, n):
    acc = {}
    for k in range(n):
        if A[r][k] and B[k][c]:
            acc = ladd(acc, lmul(A[r][k], B[k][c]))
    return acc


def burau(word, n):
    mats = {}
    acc = None
    for x in word:
        key = x
        if key not in mats:
            mats[key] = burau_gen(n, abs(x), inverse=x < 0)
        acc = mats[key] if acc is None else mat_mul(mats[key], acc)
    return acc


def det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return ladd(lmul(m[0][0], m[1][1]), lneg(lmul(m[0][1], m[1][0])))
    acc = {}
    for c in range(n):
        minor = [[m[r][cc] for cc in range(n) if cc != c] for r in range(1, n)]
        term = lmul(m[0][c], det(minor))
        acc = ladd(acc, term if c % 2 == 0 else lneg(term))
    return acc


def alexander(word, n):
    """Symmetrized Alexander coefficient list of the closure, or None."""
    B = burau(word, n)
    for k in range(n - 1):
        B[k][k] = ladd(B[k][k], {0: -1})  # Burau(beta) - I
    d = det(B)
    if not d:
        return None
    # divide by 1 + t + ... + t^(n-1)
    cyc = {e: 1 for e in range(n)}
    quot = {}
    work = dict(d)
    while work:
        e = max(work)
        c = work[e]
        quot[e - (n - 1)] = c
        work = ladd(work, lneg(lmul({e - (n - 1): c}, cyc)))
        if work and max(work) >= e:
            return None
    lo, hi = min(quot), max(quot)
    coeffs = [quot.get(e, 0) for e in range(lo, hi + 1)]
    if coeffs[0] < 0 or (coeffs[0] == 0 and sum(c for c in coeffs if c) < 0):
        coeffs = [-c for c in coeffs]
    if coeffs != coeffs[::-1]:
        return None  # numerical safety: Alexander of a knot is palindromic
    return coeffs


def components(word, n):
    perm = list(range(n))
    for x in word:
        k = abs(x) - 1
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
    seen = [False] * n
    cnt = 0
    for s in range(n):
        if not seen[s]:
            cnt += 1
            j = s
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cnt


def sanity():
    assert alexander([1, 1, 1], 2) == [1, -1, 1]
    assert alexander([1, -2, 1, -2], 3) == [1, -3, 1]
    assert alexander([1, 1, 1, 2, -1, 2], 3) == [2, -3, 2]
    assert alexander([1, 1, 2, -1, -3, 2, -3], 4) == [2, -5, 2]
    assert alexander([1, 1, 1, 1, 2, -1, 2, 2], 3) == [2, -4, 5, -4, 2]
    bb = burau([1, 2, 1], 3)
    cc = burau([2, 1, 2], 3)
    assert bb == cc, "braid relation fails"
    print("burau oracle sanity OK")


def search(n, lengths, targets, tries, seed, require_all_positions=True):
    rng = random.Random(seed)
    alphabet = [i for i in range(-(n - 1), n) if i != 0]
    hits = {}
    seen = set()
    for _ in range(tries):
        L = rng.choice(lengths)
        word = tuple(rng.choice(alphabet) for _ in range(L))
        if word in seen:
            continue
        seen.add(word)
        if require_all_positions and len({abs(x) for x in word}) < n - 1:
            continue
        if components(word, n) != 1:
            continue
        a = alexander(word, n)
        if a is None:
            continue
        key = tuple(a)
        if key in targets:
            hits.setdefault(key, set()).add(word)
    return hits


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--strands", type=int, default=4)
    ap.add_argument("--lengths", type=str, default="8,9")
    ap.add_argument("--tries", type=int, default=200000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--targets", type=str, required=True,
                    help="semicolon-separated coefficient lists, e.g. '3,-5,3;4,-7,4'")
    ap.add_argument("--max-per-target", type=int, default=6)
    args = ap.parse_args()
    sanity()
    targets = {tuple(int(x) for x in t.split(",")): t for t in args.targets.split(";")}
    hits = search(args.strands, [int(x) for x in args.lengths.split(",")],
                  set(targets), args.tries, args.seed)
    for key, words in hits.items():
        print(f"target {list(key)}:")
        for w in sorted(words, key=lambda w: (len(w), sum(abs(x) for x in w)))[: args.max_per_target]:
            print("   ", list(w))
