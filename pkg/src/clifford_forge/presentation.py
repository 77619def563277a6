"""Clifford presentations of (weighted, non-diagonal) homogeneous forms.

The algebra C(f_m, ..., f_dm) is generated by a_J, |J| = m, modulo the
x-coefficients of

    L^d - sum_{l=1..d} L^(d-l) * f_{lm},        L = sum_J a_J (x) x^J.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import SpecError
from .field import FieldSpec
from .parse import parse_poly
from .poly import CPoly, MixedPoly, NCPoly, coeff_of_xmonomial, mixed_mul, monomials_of_degree


@dataclass(frozen=True)
class FormSpec:
    n: int
    m: int
    d: int
    forms: tuple  # forms[l-1] is f_{lm}, a CPoly in n variables (possibly zero)
    field: FieldSpec

    def __post_init__(self):
        for name in ("n", "m", "d"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise SpecError(f"{name} must be a positive integer")
        if len(self.forms) != self.d:
            raise SpecError(f"expected {self.d} forms, got {len(self.forms)}")
        for ell, f in enumerate(self.forms, start=1):
            if f.n != self.n or f.field != self.field:
                raise SpecError(f"form f_{ell * self.m} lives in the wrong ring")
            if not f.is_homogeneous(ell * self.m):
                raise SpecError(
                    f"form f_{ell * self.m} is not homogeneous of degree {ell * self.m}"
                )

    @property
    def is_diagonal(self) -> bool:
        return all(f.is_zero() for f in self.forms[:-1])

    @property
    def top_form(self) -> CPoly:
        return self.forms[-1]

    @property
    def variable_names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.n)]

    def generator_names(self) -> list[str]:
        return [generator_name(J) for J in generators(self)]

    def generator_context(self) -> dict:
        """Accepted input names for the generators: ``a[J]``, plus ``a1..an`` when m = 1."""
        ctx = {}
        for i, J in enumerate(generators(self)):
            ctx[generator_name(J)] = i
            if self.m == 1:
                ctx[f"a{J.index(1) + 1}"] = i
        return ctx

    def to_json(self) -> dict:
        names = self.variable_names
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "m": self.m,
            "d": self.d,
            "forms": [
                {"ell": ell, "poly": f.format(names)}
                for ell, f in enumerate(self.forms, start=1)
                if not f.is_zero()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FormSpec:
        if not isinstance(obj, dict):
            raise SpecError("form spec must be a JSON object")
        try:
            field = FieldSpec.from_json(obj["field"])
            n, m, d = obj["n"], obj["m"], obj["d"]
            entries = obj.get("forms", [])
        except KeyError as exc:
            raise SpecError(f"form spec is missing {exc.args[0]!r}") from None
        for name, v in (("n", n), ("m", m), ("d", d)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise SpecError(f"{name} must be a positive integer")
        forms = [CPoly.zero(field, n) for _ in range(d)]
        seen = set()
        names = [f"x{i + 1}" for i in range(n)]
        for entry in entries:
            ell = entry.get("ell") if isinstance(entry, dict) else None
            if not isinstance(ell, int) or not 1 <= ell <= d or ell in seen:
                raise SpecError(f"bad form entry {entry!r}")
            seen.add(ell)
            forms[ell - 1] = parse_poly(str(entry.get("poly", "")), names, field)
        return cls(n, m, d, tuple(forms), field)


def generator_name(J) -> str:
    return "a[" + ",".join(str(j) for j in J) + "]"


def generators(spec: FormSpec) -> list[tuple]:
    """Exponent vectors J with |J| = m, in deglex order; generator a_J has this index."""
    return monomials_of_degree(spec.n, spec.m)


def weighted(m: int, f: CPoly, d: int) -> FormSpec:
    if f.n < 1:
        raise SpecError("need at least one variable")
    if not f.is_homogeneous(m * d):
        raise SpecError(f"form must be homogeneous of degree {m * d}")
    forms = tuple(CPoly.zero(f.field, f.n) for _ in range(d - 1)) + (f,)
    return FormSpec(f.n, m, d, forms, f.field)


def roby(f: CPoly, d: int) -> FormSpec:
    return weighted(1, f, d)


def nondiagonal(f_list) -> FormSpec:
    f_list = tuple(f_list)
    if not f_list:
        raise SpecError("need at least one form")
    f0 = f_list[0]
    for i, f in enumerate(f_list, start=1):
        if not f.is_homogeneous(i):
            raise SpecError(f"entry {i} is not homogeneous of degree {i}")
    return FormSpec(f0.n, 1, len(f_list), f_list, f0.field)


def linear_form(spec: FormSpec) -> MixedPoly:
    """L = sum_J a_J (x) x^J."""
    one = spec.field.one
    return MixedPoly._raw(
        spec.field, spec.n, {((i,), J): one for i, J in enumerate(generators(spec))}
    )


def master_identity(spec: FormSpec) -> MixedPoly:
    """L^d - sum_{l=1..d} L^(d-l) (1 (x) f_{lm})."""
    L = linear_form(spec)
    powers = [MixedPoly.one(spec.field, spec.n)]
    for _ in range(spec.d):
        powers.append(mixed_mul(powers[-1], L))
    delta = powers[spec.d]
    for ell, f in enumerate(spec.forms, start=1):
        if not f.is_zero():
            delta = delta - mixed_mul(powers[spec.d - ell], MixedPoly.from_cpoly(f))
    return delta


@dataclass(frozen=True)
class Presentation:
    spec: FormSpec
    generators: tuple
    slots: tuple  # (alpha, NCPoly) for every x-monomial alpha of degree md, zero entries included

    @property
    def relations(self) -> list[NCPoly]:
        return [r for _, r in self.slots if not r.is_zero()]

    @property
    def omitted(self) -> list[tuple]:
        return [alpha for alpha, r in self.slots if r.is_zero()]

    @property
    def slot_count(self) -> int:
        return len(self.slots)

    @property
    def generator_names(self) -> list[str]:
        return [generator_name(J) for J in self.generators]

    def relations_json(self) -> list[dict]:
        f = self.spec.field
        return [
            {
                "monomial": list(alpha),
                "relation": [{"word": list(w), "coeff": f.format(c)} for w, c in r.sorted_terms()],
            }
            for alpha, r in self.slots
            if not r.is_zero()
        ]


def expected_slot_count(spec: FormSpec) -> int:
    return comb(spec.n + spec.m * spec.d - 1, spec.m * spec.d)


def clifford_relations(spec: FormSpec) -> Presentation:
    delta = master_identity(spec)
    slots = tuple(
        (alpha, coeff_of_xmonomial(delta, alpha))
        for alpha in monomials_of_degree(spec.n, spec.m * spec.d)
    )
    return Presentation(spec, tuple(generators(spec)), slots)


@dataclass(frozen=True)
class HypersurfaceData:
    equation: CPoly  # in x0, x1..xn with x0 of weight m
    m: int
    genus_hint: int | None = None

    @property
    def weights(self) -> tuple:
        return (self.m,) + (1,) * (self.equation.n - 1)

    def format(self) -> str:
        return self.equation.format([f"x{i}" for i in range(self.equation.n)])


def hypersurface_equation(spec: FormSpec, genus_hint: int | None = None) -> HypersurfaceData:
    n1 = spec.n + 1
    x0 = CPoly.var(spec.field, n1, 0)
    eq = x0 ** spec.d
    for ell, f in enumerate(spec.forms, start=1):
        eq = eq - (x0 ** (spec.d - ell)) * f.extend(n1, offset=1)
    data = HypersurfaceData(eq, spec.m, genus_hint)
    assert eq.is_homogeneous(spec.m * spec.d, data.weights)
    return data
