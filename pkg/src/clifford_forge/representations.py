"""Matrix representations a_J -> A_J of a Clifford presentation.

A tuple of N x N matrices is a representation iff

    M(x)^d - sum_l M(x)^(d-l) f_{lm}(x) Id = 0,      M(x) = sum_J A_J x^J,

as a matrix of polynomials; equivalently every relation of the presentation
evaluates to the zero matrix.  :func:`verify_rep` runs both checks and insists
that they agree monomial by monomial.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import kernels
from .errors import ArityError, ResourceError, SpecError, UnverifiedRepresentation
from .field import FieldSpec
from .linalg import EchelonSpan, rref
from .poly import CPoly, monomial_key
from .presentation import FormSpec, Presentation, clifford_relations, generators

DEFAULT_SEARCH_CAP = 2**26
THREADS_ENV = "CLIFFORD_FORGE_THREADS"


# -- plain matrices (tuples of tuples of field elements) ---------------------


def identity(field: FieldSpec, n: int) -> tuple:
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def zeros(field: FieldSpec, n: int) -> tuple:
    return tuple(tuple(field.zero for _ in range(n)) for _ in range(n))


def matmul(field: FieldSpec, A, B) -> tuple:
    n = len(A)
    cols = list(zip(*B))
    out = []
    for i in range(n):
        row = A[i]
        out.append(
            tuple(
                field(sum(a * b for a, b in zip(row, col))) for col in cols
            )
        )
    return tuple(out)


def matadd(field: FieldSpec, A, B, scale=1) -> tuple:
    return tuple(
        tuple(field.add(a, field.mul(scale, b)) for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def is_zero_matrix(A) -> bool:
    return not any(x for row in A for x in row)


def inverse(field: FieldSpec, A) -> tuple:
    n = len(A)
    aug = [list(A[i]) + list(identity(field, n)[i]) for i in range(n)]
    rows, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ArityError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def eval_word(field: FieldSpec, mats, word, n: int) -> tuple:
    if not word:
        return identity(field, n)
    prod = mats[word[0]]
    for a in word[1:]:
        prod = matmul(field, prod, mats[a])
    return prod


def eval_ncpoly(field: FieldSpec, mats, terms: dict, n: int) -> tuple:
    acc = zeros(field, n)
    for w, c in terms.items():
        acc = matadd(field, acc, eval_word(field, mats, w, n), c)
    return acc


# -- representations ---------------------------------------------------------


@dataclass(frozen=True)
class MatrixRep:
    spec: FormSpec
    size: int
    matrices: tuple

    def __post_init__(self):
        g = len(generators(self.spec))
        if len(self.matrices) != g:
            raise ArityError(f"expected {g} matrices, got {len(self.matrices)}")
        f = self.spec.field
        mats = tuple(
            tuple(tuple(f(x) for x in row) for row in A) for A in self.matrices
        )
        for A in mats:
            if len(A) != self.size or any(len(row) != self.size for row in A):
                raise ArityError(f"matrices must be {self.size}x{self.size}")
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def from_flat(cls, spec: FormSpec, size: int, flat) -> MatrixRep:
        N2 = size * size
        g = len(flat) // N2 if N2 else 0
        mats = tuple(
            tuple(tuple(flat[k * N2 + i * size:k * N2 + (i + 1) * size]) for i in range(size))
            for k in range(g)
        )
        return cls(spec, size, mats)

    def flat(self) -> tuple:
        return tuple(x for A in self.matrices for row in A for x in row)

    def to_json(self) -> dict:
        fmt = self.spec.field.format
        return {
            "size": self.size,
            "matrices": [
                {"size": self.size, "entries": [[fmt(x) for x in row] for row in A]}
                for A in self.matrices
            ],
        }

    @classmethod
    def from_json(cls, spec: FormSpec, obj) -> MatrixRep:
        if isinstance(obj, dict) and "matrices" in obj:
            mats_json = obj["matrices"]
        elif isinstance(obj, list):
            mats_json = obj
        else:
            raise SpecError("representation JSON needs a 'matrices' list")
        if not isinstance(mats_json, list) or not mats_json:
            raise SpecError("representation JSON needs a nonempty 'matrices' list")
        mats = []
        for mj in mats_json:
            if not isinstance(mj, dict) or not isinstance(mj.get("entries"), list):
                raise SpecError("each matrix needs an 'entries' list")
            mats.append(
                tuple(tuple(spec.field.parse(x) for x in row) for row in mj["entries"])
            )
        size = obj.get("size", len(mats[0])) if isinstance(obj, dict) else len(mats[0])
        for mj, A in zip(mats_json, mats):
            if mj.get("size", size) != size:
                raise ArityError("matrix sizes disagree")
        return cls(spec, size, tuple(mats))

    def conjugate(self, P) -> MatrixRep:
        f = self.spec.field
        Pinv = inverse(f, P)
        return MatrixRep(
            self.spec, self.size, tuple(matmul(f, matmul(f, P, A), Pinv) for A in self.matrices)
        )


@dataclass(frozen=True)
class Verification:
    valid: bool
    witness: dict | None  # {"monomial", "row", "col", "value"} for the first failure
    failing_monomials: tuple = ()

    def __bool__(self):
        return self.valid


def polynomial_matrix(rep: MatrixRep) -> list[list[CPoly]]:
    """M(x) = sum_J A_J x^J with CPoly entries."""
    spec, N = rep.spec, rep.size
    f = spec.field
    M = [[CPoly.zero(f, spec.n) for _ in range(N)] for _ in range(N)]
    for J, A in zip(generators(spec), rep.matrices):
        for i in range(N):
            for j in range(N):
                if A[i][j]:
                    M[i][j] = M[i][j] + CPoly.monomial(f, spec.n, J, A[i][j])
    return M


def _pmatmul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = A[i][0] * B[0][j]
            for k in range(1, n):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _ppow(M, e, one):
    n = len(M)
    result = [[one if i == j else one * 0 for j in range(n)] for i in range(n)]
    base = M
    while e:
        if e & 1:
            result = _pmatmul(result, base)
        e >>= 1
        if e:
            base = _pmatmul(base, base)
    return result


def action_residual(spec: FormSpec, M) -> list[list[CPoly]]:
    """E(x) = M^d - sum_l M^(d-l) f_{lm} Id for a square matrix M of CPolys."""
    N = len(M)
    one = CPoly.constant(spec.field, spec.n, 1)
    if spec.is_diagonal:
        E = _ppow(M, spec.d, one)
    else:
        # Horner: (((M - f_m) M - f_2m) M ...) - f_dm
        E = [list(row) for row in M]
        for ell in range(1, spec.d):
            for i in range(N):
                E[i][i] = E[i][i] - spec.forms[ell - 1]
            E = _pmatmul(E, M)
    top = spec.forms[-1]
    for i in range(N):
        E[i][i] = E[i][i] - top
    return E


def identity_residual(rep: MatrixRep) -> list[list[CPoly]]:
    return action_residual(rep.spec, polynomial_matrix(rep))


def _route_identity(rep: MatrixRep):
    E = identity_residual(rep)
    bad: dict = {}
    for i, row in enumerate(E):
        for j, p in enumerate(row):
            for e, c in p.terms.items():
                bad.setdefault(e, (i, j, c))
    return bad


def _route_relations(rep: MatrixRep, pres: Presentation):
    f = rep.spec.field
    bad: dict = {}
    for alpha, rel in pres.slots:
        if rel.is_zero():
            continue
        R = eval_ncpoly(f, rep.matrices, rel.terms, rep.size)
        if not is_zero_matrix(R):
            i, j = next((i, j) for i, row in enumerate(R) for j, x in enumerate(row) if x)
            bad[alpha] = (i, j, R[i][j])
    return bad


def verify_rep(rep: MatrixRep, presentation: Presentation | None = None) -> Verification:
    pres = presentation or clifford_relations(rep.spec)
    via_identity = _route_identity(rep)
    via_relations = _route_relations(rep, pres)
    if set(via_identity) != set(via_relations):
        raise AssertionError("matrix-identity and relation routes disagree")
    if not via_identity:
        return Verification(True, None)
    order = sorted(via_identity, key=monomial_key)
    first = order[0]
    i, j, c = via_identity[first]  # first nonzero entry, row-major
    witness = {
        "monomial": list(first),
        "row": i,
        "col": j,
        "value": rep.spec.field.format(c),
    }
    return Verification(False, witness, tuple(order))


def check_rank_divisibility(N: int, spec: FormSpec) -> bool:
    return N % spec.d == 0


# -- search ------------------------------------------------------------------


@dataclass(frozen=True)
class SearchReport:
    spec: FormSpec
    size: int
    mode: str
    seed: int | None
    trials: int | None
    cap: int
    candidates: int
    found: tuple = dc_field(default=())
    exhausted: bool = False

    def to_json(self) -> dict:
        return {
            "field": self.spec.field.to_json(),
            "size": self.size,
            "mode": self.mode,
            "seed": self.seed,
            "trials": self.trials,
            "cap": self.cap,
            "candidates": self.candidates,
            "exhausted": self.exhausted,
            "found": [rep.to_json() for rep in self.found],
        }


def encoded_relations(pres: Presentation) -> list[list[tuple]]:
    """Relations as (coeff mod p, word) lists for the search kernels."""
    return [[(int(c), w) for w, c in rel.sorted_terms()] for rel in pres.relations]


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise SpecError(f"{THREADS_ENV} must be a positive integer") from None
    return os.cpu_count() or 1


def search_reps(
    spec: FormSpec,
    N: int,
    mode: str = "exhaustive",
    seed: int | None = None,
    trials: int | None = None,
    cap: int = DEFAULT_SEARCH_CAP,
    threads: int | None = None,
    entry_bound: int = 2,
    backend=None,
) -> SearchReport:
    """Find representations of size N.

    Exhaustive mode (prime fields only) walks every tuple in row-major
    lexicographic order of the entries of A_1, A_2, ...; a prefix is pruned as
    soon as a relation in the generators fixed so far fails, which does not
    change the result.  Random mode draws ``trials`` tuples from
    ``random.Random(seed)``: uniform over F_p, or uniform integers in
    [-entry_bound, entry_bound] over Q.
    """
    if N < 1:
        raise SpecError("size must be positive")
    f = spec.field
    g = len(generators(spec))
    pres = clifford_relations(spec)
    if mode == "exhaustive":
        if not f.is_prime_field:
            raise SpecError("exhaustive search needs a prime field")
        candidates = f.p ** (g * N * N)
        if candidates > cap:
            raise ResourceError(f"candidate space {f.p}^{g * N * N} exceeds the cap {cap}")
        impl = backend or _kernel_for(f.p)
        rels = encoded_relations(pres)
        level0 = f.p ** (N * N)
        workers = max(1, min(threads or default_threads(), level0))
        bounds = [level0 * k // workers for k in range(workers + 1)]
        chunks = [(bounds[k], bounds[k + 1]) for k in range(workers) if bounds[k] < bounds[k + 1]]
        if len(chunks) == 1:
            parts = [impl.search_fp(f.p, N, g, rels, *chunks[0])]
        else:
            with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
                parts = list(pool.map(lambda c: impl.search_fp(f.p, N, g, rels, *c), chunks))
        found = tuple(MatrixRep.from_flat(spec, N, flat) for part in parts for flat in part)
        for rep in found:
            if not verify_rep(rep, pres):
                raise AssertionError("search kernel returned a non-representation")
        return SearchReport(spec, N, mode, None, None, cap, candidates, found, True)
    if mode == "random":
        if seed is None:
            raise SpecError("random mode needs an explicit seed")
        if trials is None or trials < 0:
            raise SpecError("random mode needs a nonnegative trial count")
        rng = random.Random(seed)
        if f.is_prime_field:
            values = range(f.p)
        else:
            values = [f(v) for v in range(-entry_bound, entry_bound + 1)]
        candidates = len(values) ** (g * N * N)
        seen = set()
        found = []
        rels = encoded_relations(pres) if f.is_prime_field else None
        impl = backend or (_kernel_for(f.p) if f.is_prime_field else None)
        for _ in range(trials):
            flat = tuple(rng.choice(values) for _ in range(g * N * N))
            if flat in seen:
                continue
            if rels is not None:
                ok = impl.relations_vanish_fp(f.p, N, flat, g, rels)
            else:
                rep = MatrixRep.from_flat(spec, N, flat)
                ok = not _route_relations(rep, pres)
            if ok:
                seen.add(flat)
                rep = MatrixRep.from_flat(spec, N, flat)
                if not verify_rep(rep, pres):
                    raise AssertionError("kernel accepted a non-representation")
                found.append(rep)
        return SearchReport(spec, N, mode, seed, trials, cap, candidates, tuple(found), False)
    raise SpecError(f"unknown search mode {mode!r}")


def _kernel_for(p: int):
    if p < kernels.MAX_COMPILED_P:
        return kernels
    return kernels._pykernels


# -- structural checks -------------------------------------------------------


@dataclass(frozen=True)
class SpanResult:
    surjective: bool
    dimension: int
    word_length: int  # longest word length needed before the span stopped growing

    def __bool__(self):
        return self.surjective


def _require_verified(rep: MatrixRep):
    if not verify_rep(rep):
        raise UnverifiedRepresentation("the matrices do not satisfy the Clifford relations")


def is_specialization(rep: MatrixRep) -> SpanResult:
    """Burnside test: do the A_J generate all of Mat_N?"""
    _require_verified(rep)
    f = rep.spec.field
    N = rep.size
    target = N * N
    span = EchelonSpan(f, target)
    I = identity(f, N)
    span.add([x for row in I for x in row])
    frontier = [I]
    length = 0
    while frontier and len(span) < target and length < target:
        length += 1
        nxt = []
        for X in frontier:
            for A in rep.matrices:
                Y = matmul(f, X, A)
                if span.add([x for row in Y for x in row]):
                    nxt.append(Y)
        frontier = nxt
    return SpanResult(len(span) == target, len(span), length)


DIVISIBILITY_GATE_ONLY = "divisibility-gate-only"


@dataclass(frozen=True)
class ReducedCheck:
    compatible: bool
    flag: str | None = None

    def __bool__(self):
        return self.compatible


def reduced_compatible(rep: MatrixRep) -> ReducedCheck:
    """Whether the representation can factor through the reduced Clifford algebra.

    Size d is automatic (d x d identities hold in Mat_d).  For larger sizes only
    the divisibility consequence is checked, and the result says so.
    """
    _require_verified(rep)
    d = rep.spec.d
    if rep.size == d:
        return ReducedCheck(True)
    if rep.size % d == 0:
        return ReducedCheck(True, DIVISIBILITY_GATE_ONLY)
    return ReducedCheck(False)
