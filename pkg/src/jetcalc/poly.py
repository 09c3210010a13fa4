"""Multivariate polynomials over exact rationals.

Coefficients are `fractions.Fraction`; monomials are multi-index tuples.
Zero coefficients are never stored.  Values are treated as immutable:
every operation returns a fresh Poly.
"""

from fractions import Fraction

from .multiindex import add, factorial, order, sub_indices, unit


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class Poly:
    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        if n <= 0:
            raise ValueError("chart dimension must be positive")
        self.n = n
        clean = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = _as_fraction(c)
                if c != 0:
                    if len(mono) != n:
                        raise ValueError("monomial dimension mismatch")
                    clean[tuple(mono)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: _as_fraction(c)})

    @classmethod
    def variable(cls, n, j):
        return cls(n, {unit(n, j): Fraction(1)})

    @classmethod
    def monomial(cls, n, alpha, c=1):
        return cls(n, {tuple(alpha): _as_fraction(c)})

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((order(m) for m in self.coeffs), default=-1)

    def constant_term(self):
        return self.coeffs.get((0,) * self.n, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        return isinstance(other, Poly) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.n, {m: c * other for m, c in self.coeffs.items()})
        self._check(other)
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = add(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.n, out)

    __rmul__ = __mul__

    def mul_truncated(self, other, max_degree):
        """Product with all monomials of total degree > max_degree dropped."""
        self._check(other)
        out = {}
        for m1, c1 in self.coeffs.items():
            d1 = order(m1)
            if d1 > max_degree:
                continue
            for m2, c2 in other.coeffs.items():
                if d1 + order(m2) > max_degree:
                    continue
                m = add(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.n, out)

    def truncate(self, max_degree):
        return Poly(self.n, {m: c for m, c in self.coeffs.items() if order(m) <= max_degree})

    def diff(self, j):
        """Partial derivative with respect to variable j (0-based)."""
        out = {}
        for m, c in self.coeffs.items():
            if m[j] > 0:
                dm = list(m)
                dm[j] -= 1
                out[tuple(dm)] = c * m[j]
        return Poly(self.n, out)

    def diff_multi(self, alpha):
        p = self
        for j, a in enumerate(alpha):
            for _ in range(a):
                p = p.diff(j)
        return p

    def evaluate(self, point):
        if len(point) != self.n:
            raise ValueError("point dimension mismatch")
        point = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.coeffs.items():
            term = c
            for x, e in zip(point, m):
                term *= x**e
            total += term
        return total

    def derivative_value(self, alpha, point):
        """Value of the alpha-th partial derivative at a point."""
        return self.diff_multi(alpha).evaluate(point)

    def compose(self, substitutions, max_degree):
        """Substitute substitutions[j] for variable j, truncating at max_degree.

        All substitution polynomials share one chart dimension, which may
        differ from self.n.
        """
        if len(substitutions) != self.n:
            raise ValueError("need one substitution per variable")
        m = substitutions[0].n
        # Powers of each substitution, built incrementally with truncation.
        pow_cache = [[Poly.const(m, 1)] for _ in range(self.n)]
        result = Poly.zero(m)
        for mono, c in self.coeffs.items():
            term = Poly.const(m, c)
            for j, e in enumerate(mono):
                cache = pow_cache[j]
                while len(cache) <= e:
                    cache.append(cache[-1].mul_truncated(substitutions[j], max_degree))
                term = term.mul_truncated(cache[e], max_degree)
            result = result + term
        return result

    def shift(self, point):
        """Rewrite in powers of (x - point): returns q with q(x - point) = self(x).

        The coefficient of (x-p)^alpha is D^alpha self(p) / alpha!.
        """
        point = [_as_fraction(x) for x in point]
        out = {}
        stack = [((0,) * self.n, self)]
        seen = {}

        def der(alpha):
            if alpha in seen:
                return seen[alpha]
            # walk down from a smaller cached derivative
            for j in range(self.n):
                if alpha[j] > 0:
                    prev = list(alpha)
                    prev[j] -= 1
                    p = der(tuple(prev)).diff(j)
                    seen[alpha] = p
                    return p
            seen[alpha] = self
            return self

        del stack
        deg = self.degree()
        from .multiindex import multi_indices

        if deg < 0:
            return Poly.zero(self.n)
        for alpha in multi_indices(self.n, deg):
            v = der(alpha).evaluate(point)
            if v != 0:
                out[alpha] = v / factorial(alpha)
        return Poly(self.n, out)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("chart dimension mismatch")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda m: (order(m), m)):
            c = self.coeffs[m]
            mono = "*".join(
                f"x{j}" if e == 1 else f"x{j}^{e}" for j, e in enumerate(m) if e
            )
            parts.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(parts)
