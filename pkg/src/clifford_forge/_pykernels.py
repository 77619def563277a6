"""Pure-Python search kernels over F_p (reference and fallback for _ckernels).

Matrices are flat row-major lists of ints in range(p).  A relation is a list of
``(coeff, word)`` pairs with coeff already reduced mod p.
"""

from __future__ import annotations


def _matmul(A, B, n, p):
    C = [0] * (n * n)
    for i in range(n):
        row = A[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += row[k] * B[k * n + j]
            C[i * n + j] = acc % p
    return C


def _identity(n):
    return [1 if i % (n + 1) == 0 else 0 for i in range(n * n)]


def relation_vanishes(p, n, mats, rel) -> bool:
    acc = [0] * (n * n)
    for coeff, word in rel:
        prod = None
        for letter in word:
            prod = mats[letter] if prod is None else _matmul(prod, mats[letter], n, p)
        if prod is None:
            prod = _identity(n)
        acc = [(a + coeff * b) % p for a, b in zip(acc, prod)]
    return not any(acc)


def relations_vanish_fp(p, n, flat, ngens, relations) -> bool:
    N2 = n * n
    mats = [list(flat[g * N2:(g + 1) * N2]) for g in range(ngens)]
    return all(relation_vanishes(p, n, mats, rel) for rel in relations)


def relation_levels(ngens, relations):
    """Bucket relations by the largest generator they mention; None if a nonzero constant appears."""
    levels = [[] for _ in range(ngens)]
    for rel in relations:
        letters = [a for _, w in rel for a in w]
        if not letters:
            if any(c for c, _ in rel):
                return None
            continue
        levels[max(letters)].append(rel)
    return levels


def _decode(idx, p, N2):
    out = [0] * N2
    for pos in range(N2 - 1, -1, -1):
        idx, out[pos] = divmod(idx, p)
    return out


def search_fp(p, n, ngens, relations, lo, hi) -> list[tuple]:
    """All solutions with first-matrix index in [lo, hi), in lexicographic order.

    Candidate tuples are ordered lexicographically over the row-major entries
    of A_1, then A_2, ...; a prefix is abandoned as soon as some relation that
    only mentions the generators fixed so far fails.
    """
    levels = relation_levels(ngens, relations)
    if levels is None or n == 0:
        return []
    N2 = n * n
    total = p ** N2
    mats = [None] * ngens
    found = []

    def rec(k):
        rng = range(lo, hi) if k == 0 else range(total)
        for idx in rng:
            mats[k] = _decode(idx, p, N2)
            if all(relation_vanishes(p, n, mats, rel) for rel in levels[k]):
                if k == ngens - 1:
                    found.append(tuple(x for M in mats for x in M))
                else:
                    rec(k + 1)

    rec(0)
    return found
