"""Exact arithmetic in the polynomial Hopf algebra of a single derivation D.

The coproduct sends D to D(x)1 + 1(x)D, the counit kills D, and the
antipode substitutes -D.  Everything is stored sparsely with Fraction
coefficients, so all computations are exact; divided powers D^(k) enter
only as the rational coefficient 1/k! on the monomial D^k.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

Scalar = Fraction


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


class HPoly:
    """Polynomial in D over Q, stored as {degree: coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        data: dict[int, Fraction] = {}
        if coeffs:
            for d, c in coeffs.items():
                c = Fraction(c)
                if c:
                    d = int(d)
                    if d < 0:
                        raise ValueError("negative D-degree")
                    data[d] = data.get(d, Fraction(0)) + c
        self.coeffs = {d: c for d, c in data.items() if c}

    @classmethod
    def zero(cls) -> "HPoly":
        return cls()

    @classmethod
    def one(cls) -> "HPoly":
        return cls({0: 1})

    @classmethod
    def d_power(cls, k: int, coeff=1) -> "HPoly":
        return cls({k: coeff})

    @classmethod
    def divided(cls, k: int) -> "HPoly":
        """D^(k) = D^k / k!."""
        return cls({k: Fraction(1, math.factorial(k))})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, HPoly) and self.coeffs == other.coeffs

    __hash__ = None  # mutable container semantics

    def __add__(self, other: "HPoly") -> "HPoly":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, Fraction(0)) + c
        return HPoly(out)

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __neg__(self) -> "HPoly":
        return HPoly({d: -c for d, c in self.coeffs.items()})

    def scale(self, c) -> "HPoly":
        c = Fraction(c)
        if not c:
            return HPoly()
        return HPoly({d: v * c for d, v in self.coeffs.items()})

    def __mul__(self, other: "HPoly") -> "HPoly":
        out: dict[int, Fraction] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, Fraction(0)) + c1 * c2
        return HPoly(out)

    def degree(self) -> int:
        """Highest power of D; -1 for the zero polynomial."""
        return max(self.coeffs, default=-1)

    def derivative(self, m: int = 1) -> "HPoly":
        """m-th derivative with respect to D."""
        cur = self.coeffs
        for _ in range(m):
            cur = {d - 1: c * d for d, c in cur.items() if d >= 1}
        return HPoly(cur)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            if d == 0:
                bits.append(str(c))
            elif d == 1:
                bits.append(f"{c}*D" if c != 1 else "D")
            else:
                bits.append(f"{c}*D^{d}" if c != 1 else f"D^{d}")
        return " + ".join(bits)


class TensorHH:
    """Element of H (x) H, stored as {(i, j): coeff} over D^i (x) D^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        data: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for key, c in coeffs.items():
                c = Fraction(c)
                if c:
                    i, j = key
                    data[(int(i), int(j))] = data.get((int(i), int(j)), Fraction(0)) + c
        self.coeffs = {k: c for k, c in data.items() if c}

    @classmethod
    def zero(cls) -> "TensorHH":
        return cls()

    @classmethod
    def one(cls) -> "TensorHH":
        return cls({(0, 0): 1})

    @classmethod
    def from_pair(cls, f: HPoly, g: HPoly) -> "TensorHH":
        out: dict[tuple[int, int], Fraction] = {}
        for i, a in f.coeffs.items():
            for j, b in g.coeffs.items():
                out[(i, j)] = a * b
        return cls(out)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorHH) and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other: "TensorHH") -> "TensorHH":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return TensorHH(out)

    def __sub__(self, other: "TensorHH") -> "TensorHH":
        return self + (-other)

    def __neg__(self) -> "TensorHH":
        return TensorHH({k: -c for k, c in self.coeffs.items()})

    def scale(self, c) -> "TensorHH":
        c = Fraction(c)
        if not c:
            return TensorHH()
        return TensorHH({k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other: "TensorHH") -> "TensorHH":
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return TensorHH(out)

    def swap(self) -> "TensorHH":
        return TensorHH({(j, i): c for (i, j), c in self.coeffs.items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for (i, j) in sorted(self.coeffs):
            bits.append(f"{self.coeffs[(i, j)]}*(D^{i}(x)D^{j})")
        return " + ".join(bits)


def comult(h: HPoly) -> TensorHH:
    """Coproduct: Delta(h) = sum_s D^(s) (x) d^s h / dD^s."""
    out: dict[tuple[int, int], Fraction] = {}
    g = h
    s = 0
    while g:
        inv = Fraction(1, math.factorial(s))
        for m, c in g.coeffs.items():
            out[(s, m)] = out.get((s, m), Fraction(0)) + c * inv
        g = g.derivative()
        s += 1
    return TensorHH(out)


def antipode(h: HPoly) -> HPoly:
    """S(h) = h(-D)."""
    return HPoly({d: c if d % 2 == 0 else -c for d, c in h.coeffs.items()})


def counit(h: HPoly) -> Scalar:
    return h.coeffs.get(0, Fraction(0))


def decompose(t: TensorHH) -> dict[int, HPoly]:
    """Write t uniquely as sum_n ((-D)^(n) (x) 1) * comult(h_n).

    Substitute x = D(x)1 and z = Delta(D) = D(x)1 + 1(x)D, so that
    1(x)D = z - x; the coefficient of x^n as a polynomial in z then
    determines h_n up to the factor (-1)^n n!.
    """
    acc: dict[int, dict[int, Fraction]] = {}
    for (i, j), c in t.coeffs.items():
        # D^i (x) D^j = x^i (z - x)^j
        for m in range(j + 1):
            n = i + j - m
            w = c * math.comb(j, m) * (-1) ** (j - m)
            row = acc.setdefault(n, {})
            row[m] = row.get(m, Fraction(0)) + w
    out: dict[int, HPoly] = {}
    for n, row in acc.items():
        sign_fact = Fraction((-1) ** n * math.factorial(n))
        h = HPoly({m: c * sign_fact for m, c in row.items()})
        if h:
            out[n] = h
    return out


def recompose(parts: Mapping[int, HPoly]) -> TensorHH:
    """Inverse of decompose: sum_n ((-D)^(n) (x) 1) * comult(h_n)."""
    total = TensorHH()
    for n, h in parts.items():
        lead = TensorHH({(n, 0): Fraction((-1) ** n, math.factorial(n))})
        total = total + lead * comult(h)
    return total
