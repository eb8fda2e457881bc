"""
Ganzzahlige Polynome in einer Variablen (chromatische, charakteristische
und Abstands-Polynome). Koeffizienten aufsteigend nach Grad.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    # --- Konstruktoren ---

    @classmethod
    def constant(cls, c: int) -> 'IntPolynomial':
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> 'IntPolynomial':
        return cls((0,) * degree + (c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> 'IntPolynomial':
        """Produkt der Linearfaktoren (t - r)."""
        result = cls((1,))
        for r in roots:
            result = result * cls((-r, 1))
        return result

    @classmethod
    def from_counts(cls, values: Iterable[int]) -> 'IntPolynomial':
        """Erzeugende Funktion sum q^v über eine Liste von Exponenten."""
        coeffs: List[int] = []
        for v in values:
            if v >= len(coeffs):
                coeffs.extend([0] * (v + 1 - len(coeffs)))
            coeffs[v] += 1
        return cls(tuple(coeffs))

    # --- Eigenschaften ---

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    def __call__(self, x: int) -> int:
        result = 0
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    # --- Arithmetik ---

    def __add__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __neg__(self) -> 'IntPolynomial':
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return self + (-other)

    def __mul__(self, other) -> 'IntPolynomial':
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coefficients))
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> 'IntPolynomial':
        """Multiplikation mit t^k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coefficients)

    def reflect_at_minus_inverse(self, n: int) -> 'IntPolynomial':
        """(-q)^n * p(-1/q) für ein Polynom p vom Grad <= n."""
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds n={n}")
        out = [0] * (n + 1)
        for k, c in enumerate(self.coefficients):
            out[n - k] += c if (n - k) % 2 == 0 else -c
        return IntPolynomial(tuple(out))

    # --- Darstellung ---

    def to_text(self, var: str = 't') -> str:
        """Absteigende Darstellung, z.B. "2q^3+5q^2+4q+1"."""
        if self.is_zero:
            return '0'
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                base = var if k == 1 else f"{var}^{k}"
                body = base if mag == 1 else f"{mag}{base}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def to_json(self) -> List[int]:
        return list(self.coefficients)

    def factor_text(self, var: str = 't') -> str:
        """Faktorisierte Form über sympy, z.B. "t*(t - 2)*(t - 1)**2"."""
        import sympy
        symbol = sympy.Symbol(var)
        expr = sum(c * symbol ** k for k, c in enumerate(self.coefficients))
        return str(sympy.factor(expr))

    def __str__(self) -> str:
        return self.to_text()


def polynomial_from_json(values: Sequence[int]) -> IntPolynomial:
    return IntPolynomial(tuple(values))
