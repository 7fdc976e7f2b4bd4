"""Minimal integer Laurent polynomials in one variable t."""

from __future__ import annotations

from .errors import AsymmetricPolynomial, InexactDivision


class Laurent(dict):
    """Map exponent -> integer coefficient; zero coefficients dropped."""

    def __init__(self, coeffs=None):
        super().__init__()
        if coeffs:
            for e, c in dict(coeffs).items():
                if c:
                    self[int(e)] = int(c)

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self)
        for e, c in other.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def shift(self, k: int) -> "Laurent":
        return Laurent({e + k: c for e, c in self.items()})

    def neg(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.items()})

    def evaluate(self, t: int) -> int:
        # integer t only; negative exponents need |t| = 1
        total = 0
        for e, c in self.items():
            if e >= 0:
                total += c * t**e
            else:
                if abs(t) != 1:
                    raise ValueError("negative exponent at non-unit argument")
                total += c * t**(-e) if t == 1 else c * (-1) ** e
        return total

    def is_symmetric(self) -> bool:
        return all(self.get(-e, 0) == c for e, c in self.items())

    def min_deg(self) -> int:
        return min(self) if self else 0

    def max_deg(self) -> int:
        return max(self) if self else 0

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for e in sorted(self, reverse=True):
            c = self[e]
            if e == 0:
                parts.append(f"{c:+d}")
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                sign = "+" if c > 0 else "-"
                exp = "t" if e == 1 else f"t^{e}"
                parts.append(f"{sign}{mag}{exp}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s


def divide_by_one_minus_tinv(p: Laurent) -> Laurent:
    """Exact division by (1 - t^-1); raises InexactDivision otherwise."""
    if not p:
        return Laurent()
    q: dict[int, int] = {}
    carry = 0
    # p = q * (1 - t^-1): p_e = q_e - q_{e+1}, so q_e = p_e + q_{e+1}
    for e in range(p.max_deg(), p.min_deg() - 1, -1):
        carry = p.get(e, 0) + carry
        if carry:
            q[e] = carry
    if carry:
        raise InexactDivision("remainder after dividing by (1 - 1/t)")
    return Laurent(q)


def normalize_alexander(p: Laurent) -> Laurent:
    """Center and sign-fix so that p(t)=p(1/t) and p(1)=1."""
    if not p:
        raise InexactDivision("zero polynomial cannot normalize to Delta")
    total = p.min_deg() + p.max_deg()
    if total % 2 != 0:
        raise AsymmetricPolynomial(f"cannot center {p}")
    centered = p.shift(-total // 2)
    if not centered.is_symmetric():
        raise AsymmetricPolynomial(f"not symmetric after centering: {centered}")
    at_one = centered.evaluate(1)
    if at_one == 1:
        return centered
    if at_one == -1:
        return centered.neg()
    raise AsymmetricPolynomial(f"Delta(1) = {at_one}, expected +-1")
