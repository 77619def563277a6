"""Curve case over P^1: graded modules with an x0-action, splitting types, Ulrich checks.

A module is held by its pushforward to P^1 written as a graded free module over
k[x1, x2] with generator degrees ``shifts``, so phi_* V = sum O(n_i) with
n_i = -s_i, together with the matrix M by which x0 acts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModuleError, SpecError, UnverifiedRepresentation
from .field import FieldSpec
from .parse import parse_poly
from .poly import CPoly
from .presentation import FormSpec, generators
from .representations import MatrixRep, action_residual, polynomial_matrix, verify_rep


@dataclass(frozen=True)
class GradedModule:
    spec: FormSpec
    shifts: tuple
    action: tuple  # tuple of tuples of CPoly in x1, x2

    def __post_init__(self):
        spec = self.spec
        if spec.n != 2:
            raise ModuleError("graded modules need a binary form (n = 2, target P^1)")
        object.__setattr__(self, "shifts", tuple(int(s) for s in self.shifts))
        object.__setattr__(self, "action", tuple(tuple(row) for row in self.action))
        r = len(self.shifts)
        if r == 0:
            raise ModuleError("empty module (rank 0) is degenerate")
        if r % spec.d:
            raise ModuleError(f"free rank {r} is not a multiple of d = {spec.d}")
        if len(self.action) != r or any(len(row) != r for row in self.action):
            raise ModuleError(f"action matrix must be {r}x{r}")
        for i, row in enumerate(self.action):
            for j, p in enumerate(row):
                if p.n != 2 or p.field != spec.field:
                    raise ModuleError(f"action entry ({i},{j}) lives in the wrong ring")
                want = spec.m + self.shifts[i] - self.shifts[j]
                if not p.is_zero() and (want < 0 or not p.is_homogeneous(want)):
                    raise ModuleError(
                        f"action entry ({i},{j}) must be zero or homogeneous of degree {want}"
                    )
        E = action_residual(spec, [list(row) for row in self.action])
        if any(not p.is_zero() for row in E for p in row):
            raise ModuleError("action does not satisfy the hypersurface equation")

    @property
    def rank(self) -> int:
        """Free rank over k[x1, x2]."""
        return len(self.shifts)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "shifts": list(self.shifts),
            "action": [[p.format(["x1", "x2"]) for p in row] for row in self.action],
        }

    @classmethod
    def from_json(cls, obj) -> GradedModule:
        if not isinstance(obj, dict) or not {"spec", "shifts", "action"} <= set(obj):
            raise ModuleError("module JSON needs 'spec', 'shifts' and 'action'")
        spec = FormSpec.from_json(obj["spec"])
        if spec.n != 2:
            raise ModuleError("graded modules need n = 2")
        shifts = obj["shifts"]
        if not isinstance(shifts, list) or not all(isinstance(s, int) for s in shifts):
            raise ModuleError("shifts must be a list of integers")
        action = obj["action"]
        if not isinstance(action, list) or not all(isinstance(row, list) for row in action):
            raise ModuleError("action must be a matrix of polynomial strings")
        names = ["x1", "x2"]
        mat = tuple(tuple(parse_poly(str(p), names, spec.field) for p in row) for row in action)
        return cls(spec, tuple(shifts), mat)


@dataclass(frozen=True)
class SplittingType:
    values: tuple  # sorted multiset {n_i}

    @property
    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)

    def __len__(self):
        return len(self.values)

    def shifted(self, t: int) -> SplittingType:
        return SplittingType(tuple(v + t for v in self.values))


@dataclass(frozen=True)
class CurveData:
    genus: int
    degree: int
    source: str  # "formula" | "user-supplied"

    def to_json(self) -> dict:
        return {"genus": self.genus, "degree": self.degree, "source": self.source}


@dataclass(frozen=True)
class UlrichReport:
    splitting: SplittingType
    is_ulrich: bool
    slope: Fraction
    genus: int
    h0_of_minus_one: int
    rank: int  # rank r of V on X (free rank / d)
    euler_characteristic: int
    degree: int  # deg V

    def to_json(self) -> dict:
        slope = self.slope
        return {
            "splitting": list(self.splitting.values),
            "is_ulrich": self.is_ulrich,
            "slope": str(slope.numerator) if slope.denominator == 1 else f"{slope.numerator}/{slope.denominator}",
            "genus": self.genus,
            "h0_of_minus_one": self.h0_of_minus_one,
            "rank": self.rank,
            "euler_characteristic": self.euler_characteristic,
            "degree": self.degree,
        }


def module_from_rep(rep: MatrixRep) -> GradedModule:
    if rep.spec.n != 2:
        raise ModuleError(f"need n = 2 for a P^1 target, got n = {rep.spec.n}")
    if not verify_rep(rep):
        raise UnverifiedRepresentation("the matrices do not satisfy the Clifford relations")
    M = polynomial_matrix(rep)
    return GradedModule(rep.spec, (0,) * rep.size, tuple(tuple(row) for row in M))


def graded_dimension(mod: GradedModule, t: int) -> int:
    return sum(max(0, t - s + 1) for s in mod.shifts)


def splitting_type(mod: GradedModule) -> SplittingType:
    """Recover {n_i} from the Hilbert function of the pushforward alone.

    With h(t) = dim of the degree-t piece, h(t) - h(t-1) = #{i : n_i >= -t},
    so the multiplicity of n = -t is the second difference at t.
    """
    lo, hi = min(mod.shifts) - 1, max(mod.shifts)
    h = {t: graded_dimension(mod, t) for t in range(lo - 2, hi + 1)}
    delta = {t: h[t] - h[t - 1] for t in range(lo - 1, hi + 1)}
    values = []
    for t in range(lo, hi + 1):
        values.extend([-t] * (delta[t] - delta[t - 1]))
    values.sort()
    for t in range(lo, hi + 1):
        assert h[t] == sum(max(0, n + t + 1) for n in values)
    return SplittingType(tuple(values))


def twist(mod: GradedModule, t: int) -> GradedModule:
    """Tensor with O(t) pulled back from P^1: every n_i goes up by t."""
    if t == 0:
        return mod
    return GradedModule(mod.spec, tuple(s - t for s in mod.shifts), mod.action)


def _univariate_gcd(a: list, b: list, field: FieldSpec) -> list:
    """gcd of coefficient lists (index = power), monic; [] is the zero polynomial."""

    def trim(p):
        while p and not p[-1]:
            p = p[:-1]
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        while len(a) >= len(b):
            k = field.div(a[-1], b[-1])
            shift = len(a) - len(b)
            a = trim([
                field.sub(x, field.mul(k, b[i - shift])) if i >= shift else x
                for i, x in enumerate(a)
            ])
            if not a:
                break
        a, b = b, a
    if a:
        inv = field.inv(a[-1])
        a = [field.mul(inv, x) for x in a]
    return a


def is_squarefree_binary(f: CPoly) -> bool:
    """No repeated linear factor over the algebraic closure.

    Dehomogenize at x2 = 1: f is squarefree iff g(t) = f(t, 1) has at most a
    simple root at infinity (deg g >= deg f - 1) and gcd(g, g') = 1.
    """
    if f.n != 2 or f.is_zero() or not f.is_homogeneous():
        return False
    D = f.degree
    field = f.field
    g = [field.zero] * (D + 1)
    for (a, _), c in f.terms.items():
        g[a] = c
    deg_g = max(i for i, c in enumerate(g) if c)
    if deg_g < D - 1:
        return False
    dg = [field.mul(field(i), g[i]) for i in range(1, deg_g + 1)]
    return len(_univariate_gcd(g[: deg_g + 1], dg, field)) == 1


def genus(spec: FormSpec, user_genus: int | None = None) -> CurveData:
    """Genus of the curve x0^d = f_{dm}(x1, x2) (degree-d cover of P^1).

    The cover is totally ramified over the md roots of f_{dm} and unramified
    over infinity, so Riemann-Hurwitz gives g = (d - 1)(md - 2) / 2.  Needs a
    diagonal spec, squarefree f_{dm}, and tame ramification (char does not
    divide d); otherwise the genus must be supplied.
    """
    if spec.n != 2:
        raise SpecError("genus needs a binary form (n = 2)")
    if user_genus is not None:
        if not isinstance(user_genus, int) or user_genus < 0:
            raise SpecError("genus must be a nonnegative integer")
        return CurveData(user_genus, spec.d, "user-supplied")
    if not spec.is_diagonal:
        raise SpecError("non-diagonal spec: supply the genus")
    p = spec.field.characteristic
    if p and spec.d % p == 0:
        raise SpecError(f"wild ramification (char {p} divides d = {spec.d}): supply the genus")
    if not is_squarefree_binary(spec.top_form):
        raise SpecError("top form is not squarefree: supply the genus")
    d, m = spec.d, spec.m
    return CurveData((d - 1) * (m * d - 2) // 2, d, "formula")


def ulrich_check(mod: GradedModule, curve: CurveData) -> UlrichReport:
    d = mod.spec.d
    if curve.degree != d:
        raise SpecError(f"curve degree {curve.degree} does not match d = {d}")
    split = splitting_type(mod)
    r = mod.rank // d
    g = curve.genus
    chi = sum(n + 1 for n in split.values)
    deg = chi + r * (g - 1)
    return UlrichReport(
        splitting=split,
        is_ulrich=split.is_trivial,
        slope=Fraction(deg, r),
        genus=g,
        h0_of_minus_one=sum(max(0, n) for n in split.values),
        rank=r,
        euler_characteristic=chi,
        degree=deg,
    )


def rep_from_module(mod: GradedModule) -> MatrixRep:
    if not splitting_type(mod).is_trivial:
        raise ModuleError("pushforward is not trivial in the given basis (nonzero splitting)")
    spec = mod.spec
    N = mod.rank
    mats = tuple(
        tuple(tuple(mod.action[i][j].coeff(J) for j in range(N)) for i in range(N))
        for J in generators(spec)
    )
    rep = MatrixRep(spec, N, mats)
    if not verify_rep(rep):
        raise AssertionError("module action did not give a representation")
    return rep


def direct_sum(*mods: GradedModule) -> GradedModule:
    """Block-diagonal sum of modules over the same spec."""
    if not mods:
        raise ModuleError("direct sum of nothing")
    spec = mods[0].spec
    if any(m.spec != spec for m in mods):
        raise ModuleError("summands live over different specs")
    zero = CPoly.zero(spec.field, 2)
    N = sum(m.rank for m in mods)
    rows = [[zero] * N for _ in range(N)]
    off = 0
    for m in mods:
        for i in range(m.rank):
            for j in range(m.rank):
                rows[off + i][off + j] = m.action[i][j]
        off += m.rank
    shifts = tuple(s for m in mods for s in m.shifts)
    return GradedModule(spec, shifts, tuple(tuple(r) for r in rows))
