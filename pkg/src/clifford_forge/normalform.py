"""Degree-truncated two-sided rewriting for k<a_J>/I.

Overlap resolution (noncommutative Buchberger) under deglex on words, with all
ambiguities whose overlap word is longer than the truncation bound discarded.
The ideal is inhomogeneous, so an S-polynomial born at degree D can produce a
rule whose leading word is shorter than D.  The largest such drop seen during
completion is used to discount the bound: ``complete_below = N - max_drop``.
Below that degree normal forms are served; above it they are refused.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .errors import DegreeBoundError, ResourceError, SpecError
from .linalg import nullspace
from .poly import NCPoly, word_key
from .presentation import Presentation

DEFAULT_RULE_CAP = 200_000


@dataclass(frozen=True)
class FilteredDims:
    dims: tuple  # dims[t] = #irreducible words of length <= t
    stable: tuple

    @property
    def total(self) -> int | None:
        """The stable dimension, if the last stable entries stopped growing."""
        stable_dims = [d for d, s in zip(self.dims, self.stable) if s]
        if len(stable_dims) >= 2 and stable_dims[-1] == stable_dims[-2]:
            return stable_dims[-1]
        return None


@dataclass
class RewriteSystem:
    presentation: Presentation
    bound: int
    rules: dict  # lead word -> tail terms {word: coeff}; lead -> tail
    complete_below: int
    max_drop: int = 0
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.presentation.spec.field

    @property
    def ngens(self) -> int:
        return len(self.presentation.generators)

    # -- reduction -----------------------------------------------------------

    def _find(self, word):
        """Leftmost-shortest occurrence of a leading word inside ``word``."""
        rules = self.rules
        lengths = sorted({len(u) for u in rules})
        for i in range(len(word) + 1):
            for L in lengths:
                if i + L > len(word):
                    break
                sub = word[i:i + L]
                if sub in rules:
                    return i, sub
        return None

    def _reduce_terms(self, terms: dict) -> dict:
        f = self.field
        cache = self._cache
        work = dict(terms)
        out: dict = {}
        while work:
            w = max(work, key=word_key)
            c = work.pop(w)
            nf = cache.get(w)
            if nf is None:
                hit = self._find(w)
                if hit is None:
                    cache[w] = nf = {w: f.one}
                else:
                    i, lead = hit
                    pre, post = w[:i], w[i + len(lead):]
                    for tw, tc in self.rules[lead].items():
                        key = pre + tw + post
                        s = f.add(work.get(key, f.zero), f.mul(c, tc))
                        if s:
                            work[key] = s
                        else:
                            work.pop(key, None)
                    continue
            for nw, nc in nf.items():
                s = f.add(out.get(nw, f.zero), f.mul(c, nc))
                if s:
                    out[nw] = s
                else:
                    out.pop(nw, None)
        return out

    def word_nf(self, word) -> dict:
        word = tuple(word)
        if word not in self._cache:
            self._cache[word] = self._reduce_terms({word: self.field.one})
        return self._cache[word]

    def normal_form(self, p: NCPoly, check: bool = True) -> NCPoly:
        """Fully reduced representative of p.

        With ``check`` (the default) inputs above ``complete_below`` are refused;
        ``check=False`` reduces anyway, valid only up to the truncation bound.
        """
        if check and p.degree > self.complete_below:
            raise DegreeBoundError(
                f"degree {p.degree} exceeds the completed range (complete below {self.complete_below})"
            )
        return NCPoly._raw(self.field, self._reduce_terms(p.terms))

    def is_irreducible(self, word) -> bool:
        return self._find(tuple(word)) is None

    # -- structure -----------------------------------------------------------

    def irreducible_words(self, t: int) -> list[tuple]:
        """All irreducible words of length <= t, in deglex order."""
        rules = self.rules
        if () in rules:
            return []
        lengths = sorted({len(u) for u in rules})
        layer = [()]
        out = [()]
        for _ in range(t):
            nxt = []
            for w in layer:
                for a in range(self.ngens):
                    v = w + (a,)
                    if not any(L <= len(v) and v[len(v) - L:] in rules for L in lengths):
                        nxt.append(v)
            out.extend(nxt)
            layer = nxt
        return out

    def filtered_dimension(self) -> FilteredDims:
        words = self.irreducible_words(self.bound)
        counts = [0] * (self.bound + 1)
        for w in words:
            counts[len(w)] += 1
        dims, run = [], 0
        for c in counts:
            run += c
            dims.append(run)
        stable = tuple(t <= self.complete_below for t in range(self.bound + 1))
        return FilteredDims(tuple(dims), stable)

    def center_basis(self, t: int) -> list[NCPoly]:
        if t > self.complete_below - 1:
            raise DegreeBoundError(
                f"center degree {t} needs completion through degree {t + 1};"
                f" complete below {self.complete_below}"
            )
        f = self.field
        basis = self.irreducible_words(t)
        index: dict = {}
        rows: list[list] = []
        for j in range(self.ngens):
            for col, w in enumerate(basis):
                comm = dict(self.word_nf(w + (j,)))
                for v, c in self.word_nf((j,) + w).items():
                    s = f.sub(comm.get(v, f.zero), c)
                    if s:
                        comm[v] = s
                    else:
                        comm.pop(v, None)
                for v, c in comm.items():
                    key = (j, v)
                    if key not in index:
                        index[key] = len(rows)
                        rows.append([f.zero] * len(basis))
                    rows[index[key]][col] = c
        center = []
        for vec in nullspace(rows, len(basis), f):
            center.append(NCPoly._raw(f, {w: c for w, c in zip(basis, vec) if c}))
        for z in center:
            for j in range(self.ngens):
                gen = NCPoly.gen(f, j)
                if self.normal_form(z * gen - gen * z):
                    raise AssertionError("center element failed the commutator check")
        return center

    # -- audits --------------------------------------------------------------

    def overlap_failures(self, degree: int | None = None) -> list:
        """Overlaps of leading words (word length <= degree) whose S-polynomial is nonzero."""
        degree = self.complete_below if degree is None else degree
        bad = []
        for u in self.rules:
            for v in self.rules:
                for k, w in _overlaps(u, v):
                    if len(w) <= degree:
                        s = _spoly(self, u, v, k)
                        if self._reduce_terms(s):
                            bad.append((u, v, k))
        return bad

    def rules_json(self) -> list[dict]:
        f = self.field
        out = []
        for lead in sorted(self.rules, key=word_key):
            tail = sorted(self.rules[lead].items(), key=lambda t: word_key(t[0]))
            out.append(
                {
                    "lead": list(lead),
                    "tail": [{"word": list(w), "coeff": f.format(c)} for w, c in tail],
                }
            )
        return out


def _overlaps(u, v):
    """Proper overlaps: suffix of u of length k equals prefix of v."""
    for k in range(1, min(len(u), len(v))):
        if u[len(u) - k:] == v[:k]:
            yield k, u + v[k:]


def _spoly(rs: RewriteSystem, u, v, k) -> dict:
    # w = u v[k:] = u[:-k] v;  S = tail_u * v[k:] - u[:-k] * tail_v
    f = rs.field
    right, left = v[k:], u[: len(u) - k]
    out: dict = {}
    for w, c in rs.rules[u].items():
        out[w + right] = f.add(out.get(w + right, f.zero), c)
    for w, c in rs.rules[v].items():
        out[left + w] = f.sub(out.get(left + w, f.zero), c)
    return {w: c for w, c in out.items() if c}


def truncated_completion(
    pres: Presentation, N: int, rule_cap: int = DEFAULT_RULE_CAP
) -> RewriteSystem:
    if N < pres.spec.d:
        raise SpecError(f"truncation degree {N} is below the form degree {pres.spec.d}")
    f = pres.spec.field
    rs = RewriteSystem(pres, N, {}, N)
    alive: dict = {}  # lead -> creation id, to invalidate stale queue entries
    queue: list = []
    counter = [0]

    def push_overlaps(lead):
        for other in list(rs.rules):
            for u, v in ((lead, other), (other, lead)) if other != lead else ((lead, lead),):
                for k, w in _overlaps(u, v):
                    if len(w) <= N:
                        counter[0] += 1
                        heapq.heappush(queue, (len(w), counter[0], u, v, k, alive[u], alive[v]))

    def insert(terms: dict, origin: int):
        pending = [(terms, origin)]
        while pending:
            terms, origin = pending.pop(0)
            r = rs._reduce_terms(terms)
            if not r:
                continue
            lead = max(r, key=word_key)
            inv = f.inv(r[lead])
            tail = {w: f.neg(f.mul(inv, c)) for w, c in r.items() if w != lead}
            rs.max_drop = max(rs.max_drop, origin - len(lead))
            for old in [u for u in rs.rules if _contains(u, lead)]:
                old_tail = rs.rules.pop(old)
                del alive[old]
                poly = {old: f.one}
                for w, c in old_tail.items():
                    poly[w] = f.neg(c)
                pending.append((poly, len(old)))
            rs.rules[lead] = tail
            counter[0] += 1
            alive[lead] = counter[0]
            rs._cache.clear()
            if len(rs.rules) > rule_cap:
                raise ResourceError(f"rule count exceeded the cap of {rule_cap}")
            push_overlaps(lead)

    for rel in pres.relations:
        insert(dict(rel.terms), rel.degree)
    while queue:
        _, _, u, v, k, iu, iv = heapq.heappop(queue)
        if alive.get(u) != iu or alive.get(v) != iv:
            continue
        insert(_spoly(rs, u, v, k), len(u) + len(v) - k)
    rs.complete_below = N - rs.max_drop
    rs._cache.clear()
    return rs


def _contains(word, sub) -> bool:
    L = len(sub)
    return any(word[i:i + L] == sub for i in range(len(word) - L + 1))
