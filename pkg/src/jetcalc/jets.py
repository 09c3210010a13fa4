"""Jets of functions and vector fields on a single chart.

A jet section of order k stores one coefficient polynomial per slot.
Slots are derivative *values* (f_alpha stands for the value of the
alpha-th derivative), not Taylor coefficients, and a section is not
required to be holonomic: the slot f_{alpha+e_j} need not equal the
derivative of the slot f_alpha.
"""

from fractions import Fraction

from .multiindex import (
    add,
    factorial,
    grlex_key,
    leq,
    multi_binomial,
    multi_indices,
    order,
    sub,
    sub_indices,
    unit,
)
from .poly import Poly, _as_fraction


def function_slots(n, k):
    """Slots of J_k(M): multi-indices |alpha| <= k in graded lex order."""
    return multi_indices(n, k)


def vector_slots(n, k, min_order=0):
    """Slots (i, alpha) of the g_k fiber, ordered by (|alpha|, alpha, i)."""
    return [
        (i, alpha)
        for alpha in multi_indices(n, k, k_min=min_order)
        for i in range(n)
    ]


class FunctionJetSection:
    """Element of J_k(M) over the chart: slot table alpha -> Poly."""

    __slots__ = ("n", "k", "coeffs")

    def __init__(self, n, k, coeffs=None):
        if n <= 0:
            raise ValueError("chart dimension must be positive")
        if k < 0:
            raise ValueError("jet order must be non-negative")
        self.n = n
        self.k = k
        table = {alpha: Poly.zero(n) for alpha in multi_indices(n, k)}
        if coeffs:
            for alpha, p in coeffs.items():
                alpha = tuple(alpha)
                if order(alpha) > k:
                    raise ValueError(f"slot {alpha} exceeds order {k}")
                if not isinstance(p, Poly):
                    p = Poly.const(n, p)
                table[alpha] = p
        self.coeffs = table

    def slot(self, alpha):
        return self.coeffs[tuple(alpha)]

    def project(self, m):
        if not 0 <= m <= self.k:
            raise ValueError(f"projection order {m} out of range 0..{self.k}")
        return FunctionJetSection(
            self.n, m, {a: p for a, p in self.coeffs.items() if order(a) <= m}
        )

    def lift(self, m, top_slots=None):
        """Reinterpret at order m >= k; new slots zero unless supplied."""
        if m < self.k:
            raise ValueError("lift target below current order")
        coeffs = dict(self.coeffs)
        if top_slots:
            for alpha, p in top_slots.items():
                if order(alpha) <= self.k:
                    raise ValueError("lift may only set new slots")
                coeffs[tuple(alpha)] = p
        return FunctionJetSection(self.n, m, coeffs)

    def at(self, point):
        return FunctionJetPoint(
            self.n,
            self.k,
            point,
            {a: p.evaluate(point) for a, p in self.coeffs.items()},
        )

    def is_zero(self):
        return all(p.is_zero() for p in self.coeffs.values())

    def __add__(self, other):
        self._check(other)
        return FunctionJetSection(
            self.n, self.k, {a: p + other.coeffs[a] for a, p in self.coeffs.items()}
        )

    def __sub__(self, other):
        self._check(other)
        return FunctionJetSection(
            self.n, self.k, {a: p - other.coeffs[a] for a, p in self.coeffs.items()}
        )

    def __neg__(self):
        return FunctionJetSection(self.n, self.k, {a: -p for a, p in self.coeffs.items()})

    def scale(self, c):
        return FunctionJetSection(self.n, self.k, {a: p * c for a, p in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, FunctionJetSection)
            and (self.n, self.k) == (other.n, other.k)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.coeffs.items())))

    def _check(self, other):
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("jet order/dimension mismatch")

    def __repr__(self):
        nz = {a: p for a, p in self.coeffs.items() if not p.is_zero()}
        return f"FunctionJetSection(n={self.n}, k={self.k}, {nz})"


class VectorJetSection:
    """Section of g_k(M) = J_k(T(M)): slot table (i, alpha) -> Poly."""

    __slots__ = ("n", "k", "coeffs")

    def __init__(self, n, k, coeffs=None):
        if n <= 0:
            raise ValueError("chart dimension must be positive")
        if k < 0:
            raise ValueError("jet order must be non-negative")
        self.n = n
        self.k = k
        table = {slot: Poly.zero(n) for slot in vector_slots(n, k)}
        if coeffs:
            for (i, alpha), p in coeffs.items():
                alpha = tuple(alpha)
                if not 0 <= i < n:
                    raise ValueError(f"component {i} out of range")
                if order(alpha) > k:
                    raise ValueError(f"slot {alpha} exceeds order {k}")
                if not isinstance(p, Poly):
                    p = Poly.const(n, p)
                table[(i, alpha)] = p
        self.coeffs = table

    def slot(self, i, alpha):
        return self.coeffs[(i, tuple(alpha))]

    def project(self, m):
        if not 0 <= m <= self.k:
            raise ValueError(f"projection order {m} out of range 0..{self.k}")
        return VectorJetSection(
            self.n, m, {s: p for s, p in self.coeffs.items() if order(s[1]) <= m}
        )

    def lift(self, m, top_slots=None):
        if m < self.k:
            raise ValueError("lift target below current order")
        coeffs = dict(self.coeffs)
        if top_slots:
            for (i, alpha), p in top_slots.items():
                if order(alpha) <= self.k:
                    raise ValueError("lift may only set new slots")
                coeffs[(i, tuple(alpha))] = p
        return VectorJetSection(self.n, m, coeffs)

    def at(self, point):
        return VectorJetPoint(
            self.n,
            self.k,
            point,
            {s: p.evaluate(point) for s, p in self.coeffs.items()},
        )

    def is_zero(self):
        return all(p.is_zero() for p in self.coeffs.values())

    def __add__(self, other):
        self._check(other)
        return VectorJetSection(
            self.n, self.k, {s: p + other.coeffs[s] for s, p in self.coeffs.items()}
        )

    def __sub__(self, other):
        self._check(other)
        return VectorJetSection(
            self.n, self.k, {s: p - other.coeffs[s] for s, p in self.coeffs.items()}
        )

    def __neg__(self):
        return VectorJetSection(self.n, self.k, {s: -p for s, p in self.coeffs.items()})

    def scale(self, c):
        return VectorJetSection(self.n, self.k, {s: p * c for s, p in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, VectorJetSection)
            and (self.n, self.k) == (other.n, other.k)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.coeffs.items())))

    def _check(self, other):
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("jet order/dimension mismatch")

    def __repr__(self):
        nz = {s: p for s, p in self.coeffs.items() if not p.is_zero()}
        return f"VectorJetSection(n={self.n}, k={self.k}, {nz})"


class FunctionJetPoint:
    """A function jet evaluated at a base point: slot table alpha -> Fraction."""

    __slots__ = ("n", "k", "point", "coeffs")

    def __init__(self, n, k, point, coeffs=None):
        self.n = n
        self.k = k
        self.point = tuple(_as_fraction(x) for x in point)
        if len(self.point) != n:
            raise ValueError("base point dimension mismatch")
        table = {alpha: Fraction(0) for alpha in multi_indices(n, k)}
        if coeffs:
            for alpha, c in coeffs.items():
                table[tuple(alpha)] = _as_fraction(c)
        self.coeffs = table

    def slot(self, alpha):
        return self.coeffs[tuple(alpha)]

    def project(self, m):
        if not 0 <= m <= self.k:
            raise ValueError("projection order out of range")
        return FunctionJetPoint(
            self.n, m, self.point, {a: c for a, c in self.coeffs.items() if order(a) <= m}
        )

    def taylor_polynomial(self):
        """The polynomial with these slots as derivative values at the base point."""
        p = Poly.zero(self.n)
        for alpha, c in self.coeffs.items():
            if c != 0:
                shifted = Poly.const(self.n, c / factorial(alpha))
                for j, e in enumerate(alpha):
                    var = Poly.variable(self.n, j) - self.point[j]
                    for _ in range(e):
                        shifted = shifted * var
                p = p + shifted
        return p

    def as_vector(self):
        return [self.coeffs[a] for a in multi_indices(self.n, self.k)]

    def __add__(self, other):
        self._check(other)
        return FunctionJetPoint(
            self.n, self.k, self.point, {a: c + other.coeffs[a] for a, c in self.coeffs.items()}
        )

    def __sub__(self, other):
        self._check(other)
        return FunctionJetPoint(
            self.n, self.k, self.point, {a: c - other.coeffs[a] for a, c in self.coeffs.items()}
        )

    def scale(self, c):
        c = _as_fraction(c)
        return FunctionJetPoint(
            self.n, self.k, self.point, {a: v * c for a, v in self.coeffs.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, FunctionJetPoint)
            and (self.n, self.k, self.point) == (other.n, other.k, other.point)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.k, self.point, frozenset(self.coeffs.items())))

    def _check(self, other):
        if (self.n, self.k, self.point) != (other.n, other.k, other.point):
            raise ValueError("jet point mismatch")

    def __repr__(self):
        nz = {a: c for a, c in self.coeffs.items() if c}
        return f"FunctionJetPoint(n={self.n}, k={self.k}, at={self.point}, {nz})"


class VectorJetPoint:
    """A vector jet evaluated at a base point: slot table (i, alpha) -> Fraction."""

    __slots__ = ("n", "k", "point", "coeffs")

    def __init__(self, n, k, point, coeffs=None):
        self.n = n
        self.k = k
        self.point = tuple(_as_fraction(x) for x in point)
        if len(self.point) != n:
            raise ValueError("base point dimension mismatch")
        table = {slot: Fraction(0) for slot in vector_slots(n, k)}
        if coeffs:
            for (i, alpha), c in coeffs.items():
                table[(i, tuple(alpha))] = _as_fraction(c)
        self.coeffs = table

    def slot(self, i, alpha):
        return self.coeffs[(i, tuple(alpha))]

    def project(self, m):
        if not 0 <= m <= self.k:
            raise ValueError("projection order out of range")
        return VectorJetPoint(
            self.n, m, self.point, {s: c for s, c in self.coeffs.items() if order(s[1]) <= m}
        )

    def taylor_field(self):
        """Component polynomials with these slots as derivative values."""
        fields = []
        for i in range(self.n):
            pt = FunctionJetPoint(
                self.n,
                self.k,
                self.point,
                {a: self.coeffs[(i, a)] for a in multi_indices(self.n, self.k)},
            )
            fields.append(pt.taylor_polynomial())
        return fields

    def as_vector(self):
        return [self.coeffs[s] for s in vector_slots(self.n, self.k)]

    def __add__(self, other):
        self._check(other)
        return VectorJetPoint(
            self.n, self.k, self.point, {s: c + other.coeffs[s] for s, c in self.coeffs.items()}
        )

    def __sub__(self, other):
        self._check(other)
        return VectorJetPoint(
            self.n, self.k, self.point, {s: c - other.coeffs[s] for s, c in self.coeffs.items()}
        )

    def scale(self, c):
        c = _as_fraction(c)
        return VectorJetPoint(
            self.n, self.k, self.point, {s: v * c for s, v in self.coeffs.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, VectorJetPoint)
            and (self.n, self.k, self.point) == (other.n, other.k, other.point)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.k, self.point, frozenset(self.coeffs.items())))

    def _check(self, other):
        if (self.n, self.k, self.point) != (other.n, other.k, other.point):
            raise ValueError("jet point mismatch")

    def __repr__(self):
        nz = {s: c for s, c in self.coeffs.items() if c}
        return f"VectorJetPoint(n={self.n}, k={self.k}, at={self.point}, {nz})"


def vector_point_from_coords(n, k, point, coords):
    slots = vector_slots(n, k)
    if len(coords) != len(slots):
        raise ValueError("coordinate vector length mismatch")
    return VectorJetPoint(n, k, point, dict(zip(slots, coords)))


def jet_project(obj, m):
    """Projection pi_{k,m}, uniform over all jet-like values."""
    return obj.project(m)


def prolong_function(f, k):
    """The holonomic k-jet section of a polynomial function."""
    return FunctionJetSection(
        f.n, k, {alpha: f.diff_multi(alpha) for alpha in multi_indices(f.n, k)}
    )


def prolong_vector_field(components, k):
    """The holonomic k-jet section of a polynomial vector field."""
    n = components[0].n
    if len(components) != n:
        raise ValueError("need one component per chart dimension")
    coeffs = {}
    for i, comp in enumerate(components):
        for alpha in multi_indices(n, k):
            coeffs[(i, alpha)] = comp.diff_multi(alpha)
    return VectorJetSection(n, k, coeffs)


def jet_product(f, g):
    """The product on J_k(M): (f*g)_alpha = sum C(alpha,beta) f_beta g_{alpha-beta}."""
    if isinstance(f, FunctionJetPoint) != isinstance(g, FunctionJetPoint):
        raise ValueError("cannot mix sections and point values")
    f._check(g)
    out = {}
    for alpha in multi_indices(f.n, f.k):
        total = None
        for beta in sub_indices(alpha):
            term = multi_binomial(alpha, beta) * f.slot(beta) * g.slot(sub(alpha, beta))
            total = term if total is None else total + term
        out[alpha] = total
    if isinstance(f, FunctionJetPoint):
        return FunctionJetPoint(f.n, f.k, f.point, out)
    return FunctionJetSection(f.n, f.k, out)


def jet_unit(n, k):
    """j_k(1), the unit for the jet product."""
    return FunctionJetSection(n, k, {(0,) * n: Poly.const(n, 1)})


def is_holonomic(section):
    """Check f_{alpha+e_j} = d_j f_alpha for every slot of order < k.

    Returns (True, None) or (False, first_violating_slot).
    """
    n, k = section.n, section.k
    if isinstance(section, FunctionJetSection):
        for alpha in multi_indices(n, k - 1) if k >= 1 else []:
            for j in range(n):
                up = add(alpha, unit(n, j))
                if section.slot(up) != section.slot(alpha).diff(j):
                    return False, (j, alpha)
        return True, None
    if isinstance(section, VectorJetSection):
        for alpha in multi_indices(n, k - 1) if k >= 1 else []:
            for j in range(n):
                up = add(alpha, unit(n, j))
                for i in range(n):
                    if section.slot(i, up) != section.slot(i, alpha).diff(j):
                        return False, (i, j, alpha)
        return True, None
    raise TypeError("expected a jet section")
