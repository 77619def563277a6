"""Exact scalar fields: the rationals and prime fields F_p.

Rational scalars are :class:`fractions.Fraction`; prime-field scalars are
plain ints in ``range(p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldError, SpecError

_SCALAR_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin for p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q" or "Fp"
    p: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p != 0:
                raise SpecError("the rationals carry no characteristic")
        elif self.kind == "Fp":
            if not (is_prime(self.p) and self.p < 2**61):
                raise SpecError(f"characteristic {self.p} is not a prime below 2^61")
        else:
            raise SpecError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F_{self.p}"

    # -- element construction -------------------------------------------------

    def __call__(self, value) -> Fraction | int:
        """Coerce an int or Fraction into the field."""
        if self.kind == "Q":
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"denominator {value.denominator} is not invertible mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self) -> range:
        if self.kind != "Fp":
            raise FieldError("the rationals cannot be enumerated")
        return range(self.p)

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise FieldError("division by zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- text ------------------------------------------------------------------

    def format(self, a) -> str:
        if self.p:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, text: str):
        m = _SCALAR_RE.match(str(text))
        if not m:
            raise FieldError(f"not a scalar: {text!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise FieldError("zero denominator")
        return self(Fraction(int(m.group(1)), den))

    # -- JSON ------------------------------------------------------------------

    def to_json(self):
        return "Q" if self.kind == "Q" else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> FieldSpec:
        if obj == "Q":
            return QQ
        if isinstance(obj, dict) and set(obj) == {"Fp"} and isinstance(obj["Fp"], int):
            return GF(obj["Fp"])
        raise SpecError(f"bad field description: {obj!r}")


QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)
