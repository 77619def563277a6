"""Commutative polynomials, the free associative algebra, and the mixed ring.

* :class:`CPoly` -- k[x_1..x_n], terms keyed by exponent tuples.
* :class:`NCPoly` -- k<a_1..a_g>, terms keyed by words (tuples of generator indices).
* :class:`MixedPoly` -- k<a>[x], terms keyed by ``(word, exponents)``; the x's are central.

All three are immutable; arithmetic returns new objects and never stores a zero
coefficient, so equality is equality of term maps.  Canonical order is deglex
(ascending) with x_1 < x_2 < ... for monomials and generator-index order for words.
"""

from __future__ import annotations

from itertools import product

from .errors import ArityError
from .field import FieldSpec

Word = tuple  # tuple[int, ...]


def monomial_key(exps: tuple) -> tuple:
    # deglex with x_1 < x_2 < ... < x_n: ties broken on the last variable first
    return (sum(exps), exps[::-1])


def word_key(word: tuple) -> tuple:
    return (len(word), word)


def monomials_of_degree(n: int, deg: int) -> list[tuple]:
    """All exponent vectors of length n and total degree deg, ascending."""
    if n == 0:
        return [()] if deg == 0 else []
    out = [e for e in product(range(deg + 1), repeat=n) if sum(e) == deg]
    out.sort(key=monomial_key)
    return out


def _add_into(terms: dict, key, c, field: FieldSpec):
    s = field.add(terms.get(key, field.zero), c)
    if s:
        terms[key] = s
    else:
        terms.pop(key, None)


def _format_term(field: FieldSpec, c, mono: str, first: bool) -> str:
    neg = not field.p and c < 0
    a = -c if neg else c
    if mono:
        body = mono if a == 1 else f"{field.format(a)}*{mono}"
    else:
        body = field.format(a)
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def _format_terms(field, items) -> str:
    if not items:
        return "0"
    return "".join(_format_term(field, c, mono, i == 0) for i, (mono, c) in enumerate(items))


class CPoly:
    __slots__ = ("field", "n", "terms")

    def __init__(self, field: FieldSpec, n: int, terms: dict | None = None):
        self.field = field
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ArityError(f"exponent vector {e} does not fit {n} variables")
            c = field(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, n, terms):
        obj = cls.__new__(cls)
        obj.field, obj.n, obj.terms = field, n, terms
        return obj

    @classmethod
    def zero(cls, field, n):
        return cls._raw(field, n, {})

    @classmethod
    def constant(cls, field, n, c):
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def var(cls, field, n, i):
        """The variable x_{i+1} (0-based index i)."""
        e = [0] * n
        e[i] = 1
        return cls._raw(field, n, {tuple(e): field.one})

    @classmethod
    def monomial(cls, field, n, exps, c=1):
        return cls(field, n, {tuple(exps): c})

    def _check(self, other):
        if self.field != other.field or self.n != other.n:
            raise ArityError("polynomials live in different rings")

    def _lift(self, other):
        if isinstance(other, CPoly):
            self._check(other)
            return other
        return CPoly.constant(self.field, self.n, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(terms, e, c, self.field)
        return CPoly._raw(self.field, self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return CPoly._raw(f, self.n, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        f = self.field
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(terms, tuple(a + b for a, b in zip(e1, e2)), f.mul(c1, c2), f)
        return CPoly._raw(f, self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = CPoly.constant(self.field, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degrees(self, weights) -> set:
        return {sum(w * x for w, x in zip(weights, e)) for e in self.terms}

    def is_homogeneous(self, deg: int | None = None, weights=None) -> bool:
        """True for zero, or if every term has (weighted) degree ``deg``."""
        weights = weights or (1,) * self.n
        degs = self.weighted_degrees(weights)
        if not degs:
            return True
        return len(degs) == 1 and (deg is None or degs == {deg})

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def extend(self, n_new: int, offset: int = 0) -> CPoly:
        """Embed into n_new variables, placing x_1 at position ``offset``."""
        pad = n_new - self.n - offset
        terms = {(0,) * offset + e + (0,) * pad: c for e, c in self.terms.items()}
        return CPoly._raw(self.field, n_new, terms)

    def format(self, names=None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.n)]
        items = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            items.append((mono, c))
        return _format_terms(self.field, items)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CPoly({self.format()!r}, n={self.n}, {self.field})"


def format_word(word: tuple, names) -> str:
    if not word:
        return ""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        k = j - i
        parts.append(names[word[i]] if k == 1 else f"{names[word[i]]}^{k}")
        i = j
    return "*".join(parts)


class NCPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: dict | None = None):
        self.field = field
        clean = {}
        for w, c in (terms or {}).items():
            c = field(c)
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field, obj.terms = field, terms
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, {})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(): c})

    @classmethod
    def gen(cls, field, i):
        return cls._raw(field, {(i,): field.one})

    @classmethod
    def word(cls, field, w, c=1):
        return cls(field, {tuple(w): c})

    def _lift(self, other):
        if isinstance(other, NCPoly):
            if other.field != self.field:
                raise ArityError("polynomials over different fields")
            return other
        return NCPoly.constant(self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(terms, w, c, self.field)
        return NCPoly._raw(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return NCPoly._raw(f, {w: f.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        f = self.field
        if not isinstance(other, NCPoly):
            c = f(other)
            if not c:
                return NCPoly.zero(f)
            return NCPoly._raw(f, {w: f.mul(v, c) for w, v in self.terms.items()})
        other = self._lift(other)
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(terms, w1 + w2, f.mul(c1, c2), f)
        return NCPoly._raw(f, terms)

    def __rmul__(self, other):
        # scalar on the left; scalars are central
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = NCPoly.constant(self.field, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def lead(self):
        """(word, coeff) of the deglex-largest term."""
        w = max(self.terms, key=word_key)
        return w, self.terms[w]

    def coeff(self, word):
        return self.terms.get(tuple(word), self.field.zero)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def generators_used(self) -> set:
        return {i for w in self.terms for i in w}

    def format(self, names) -> str:
        return _format_terms(self.field, [(format_word(w, names), c) for w, c in self.sorted_terms()])

    def __repr__(self):
        names = [f"a{i + 1}" for i in range(max(self.generators_used(), default=-1) + 1)]
        return f"NCPoly({self.format(names)!r}, {self.field})"


class MixedPoly:
    """Element of k<a_1..a_g>[x_1..x_n]: sum of c * word (x) x^alpha."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: FieldSpec, n: int, terms: dict | None = None):
        self.field = field
        self.n = n
        clean = {}
        for (w, e), c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ArityError(f"exponent vector {e} does not fit {n} variables")
            c = field(c)
            if c:
                clean[(tuple(w), e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, n, terms):
        obj = cls.__new__(cls)
        obj.field, obj.n, obj.terms = field, n, terms
        return obj

    @classmethod
    def one(cls, field, n):
        return cls._raw(field, n, {((), (0,) * n): field.one})

    @classmethod
    def from_cpoly(cls, p: CPoly) -> MixedPoly:
        return cls._raw(p.field, p.n, {((), e): c for e, c in p.terms.items()})

    @classmethod
    def from_ncpoly(cls, p: NCPoly, n: int) -> MixedPoly:
        return cls._raw(p.field, n, {(w, (0,) * n): c for w, c in p.terms.items()})

    def _check(self, other):
        if not isinstance(other, MixedPoly) or self.field != other.field or self.n != other.n:
            raise ArityError("mixed polynomials live in different rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(terms, k, c, self.field)
        return MixedPoly._raw(self.field, self.n, terms)

    def __neg__(self):
        f = self.field
        return MixedPoly._raw(f, self.n, {k: f.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return mixed_mul(self, other)

    def __pow__(self, k):
        return mixed_pow(self, k)

    def __eq__(self, other):
        if not isinstance(other, MixedPoly):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def xmonomials(self) -> list:
        return sorted({e for _, e in self.terms}, key=monomial_key)

    def __repr__(self):
        parts = [f"{c}*{list(w)}x{e}" for (w, e), c in sorted(self.terms.items())]
        return f"MixedPoly({' + '.join(parts) or '0'})"


def mixed_mul(p: MixedPoly, q: MixedPoly) -> MixedPoly:
    """(u (x) alpha) * (v (x) beta) = uv (x) alpha+beta, extended bilinearly."""
    p._check(q)
    f = p.field
    terms: dict = {}
    for (w1, e1), c1 in p.terms.items():
        for (w2, e2), c2 in q.terms.items():
            key = (w1 + w2, tuple(a + b for a, b in zip(e1, e2)))
            _add_into(terms, key, f.mul(c1, c2), f)
    return MixedPoly._raw(f, p.n, terms)


def mixed_pow(p: MixedPoly, e: int) -> MixedPoly:
    if e < 0:
        raise ValueError("negative power")
    result = MixedPoly.one(p.field, p.n)
    for _ in range(e):
        result = mixed_mul(result, p)
    return result


def coeff_of_xmonomial(p: MixedPoly, exps) -> NCPoly:
    exps = tuple(exps)
    if len(exps) != p.n:
        raise ArityError(f"exponent vector {exps} does not fit {p.n} variables")
    return NCPoly._raw(p.field, {w: c for (w, e), c in p.terms.items() if e == exps})
