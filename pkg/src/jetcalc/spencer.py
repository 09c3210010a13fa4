"""Bracket calculus on jets: algebraic bracket, Spencer operator,
Spencer bracket, the action of vector jets on function jets, and the
Lie algebra of the isotropy jet group.

The Spencer operator measures the failure of a section to be holonomic;
the Spencer bracket corrects the algebraic bracket by Spencer terms so
that it closes at the same order and satisfies the Jacobi identity.
"""

from fractions import Fraction

from .jets import (
    FunctionJetPoint,
    FunctionJetSection,
    VectorJetPoint,
    VectorJetSection,
    vector_slots,
)
from .multiindex import (
    add,
    multi_binomial,
    multi_indices,
    order,
    sub,
    sub_indices,
    unit,
)
from .poly import Poly


class CovectorIndexedSection:
    """A section of T* tensor J_k or T* tensor g_k: one jet section per
    covector slot j = 0..n-1."""

    __slots__ = ("n", "k", "parts")

    def __init__(self, n, k, parts):
        if len(parts) != n:
            raise ValueError("need one part per covector slot")
        self.n = n
        self.k = k
        self.parts = list(parts)

    def part(self, j):
        return self.parts[j]

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def project(self, m):
        return CovectorIndexedSection(self.n, m, [p.project(m) for p in self.parts])

    def __eq__(self, other):
        return (
            isinstance(other, CovectorIndexedSection)
            and (self.n, self.k) == (other.n, other.k)
            and self.parts == other.parts
        )

    def __sub__(self, other):
        return CovectorIndexedSection(
            self.n, self.k, [a - b for a, b in zip(self.parts, other.parts)]
        )


def algebraic_bracket(x_jet, y_jet):
    """The pointwise bracket on jets, dropping one order.

    Obtained by formally differentiating the classical bracket formula
    and substituting slots:
    {X,Y}^i_alpha = sum_{beta<=alpha} C(alpha,beta)
        (xi^a_beta eta^i_{(alpha-beta)+e_a} - eta^a_beta xi^i_{(alpha-beta)+e_a}).
    """
    _check_pair(x_jet, y_jet)
    if x_jet.k < 1:
        raise ValueError("algebraic bracket needs order at least 1")
    n, k = x_jet.n, x_jet.k
    out = {}
    for alpha in multi_indices(n, k - 1):
        for i in range(n):
            total = _zero_like(x_jet)
            for beta in sub_indices(alpha):
                c = multi_binomial(alpha, beta)
                rest = sub(alpha, beta)
                for a in range(n):
                    up = add(rest, unit(n, a))
                    total = total + c * (
                        x_jet.slot(a, beta) * y_jet.slot(i, up)
                        - y_jet.slot(a, beta) * x_jet.slot(i, up)
                    )
            out[(i, alpha)] = total
    if isinstance(x_jet, VectorJetPoint):
        return VectorJetPoint(n, k - 1, x_jet.point, out)
    return VectorJetSection(n, k - 1, out)


def isotropy_bracket(x_jet, y_jet):
    """The bracket of J_{k,0}: jets with vanishing order-0 part.

    Because the order-0 parts vanish, the algebraic bracket formula
    closes at full order k (every slot of order k+1 is multiplied by an
    order-0 slot, which is zero).
    """
    _check_pair(x_jet, y_jet)
    n, k = x_jet.n, x_jet.k
    z = (0,) * n
    for a in range(n):
        if x_jet.slot(a, z) != 0 or y_jet.slot(a, z) != 0:
            raise ValueError("isotropy bracket needs vanishing order-0 part")
    out = {}
    for alpha in multi_indices(n, k):
        for i in range(n):
            total = _zero_like(x_jet)
            for beta in sub_indices(alpha):
                if order(beta) == 0:
                    continue  # order-0 slots vanish on J_{k,0}
                c = multi_binomial(alpha, beta)
                rest = sub(alpha, beta)
                for a in range(n):
                    up = add(rest, unit(n, a))
                    if order(up) > k:
                        continue  # partner slot would be order 0
                    total = total + c * (
                        x_jet.slot(a, beta) * y_jet.slot(i, up)
                        - y_jet.slot(a, beta) * x_jet.slot(i, up)
                    )
            out[(i, alpha)] = total
    if isinstance(x_jet, VectorJetPoint):
        return VectorJetPoint(n, k, x_jet.point, out)
    return VectorJetSection(n, k, out)


def spencer_operator_vec(section):
    """D: g_{k+1} -> T* tensor g_k, slot (j; i, alpha) = d_j xi^i_alpha - xi^i_{alpha+e_j}."""
    if section.k < 1:
        raise ValueError("Spencer operator needs order at least 1")
    n, k = section.n, section.k - 1
    parts = []
    for j in range(n):
        coeffs = {}
        for alpha in multi_indices(n, k):
            for i in range(n):
                coeffs[(i, alpha)] = section.slot(i, alpha).diff(j) - section.slot(
                    i, add(alpha, unit(n, j))
                )
        parts.append(VectorJetSection(n, k, coeffs))
    return CovectorIndexedSection(n, k, parts)


def spencer_operator_fun(section):
    """D: J_{k+1} -> T* tensor J_k, function-valued."""
    if section.k < 1:
        raise ValueError("Spencer operator needs order at least 1")
    n, k = section.n, section.k - 1
    parts = []
    for j in range(n):
        coeffs = {}
        for alpha in multi_indices(n, k):
            coeffs[alpha] = section.slot(alpha).diff(j) - section.slot(
                add(alpha, unit(n, j))
            )
        parts.append(FunctionJetSection(n, k, coeffs))
    return CovectorIndexedSection(n, k, parts)


def _zero_like(jet):
    if isinstance(jet, (VectorJetPoint, FunctionJetPoint)):
        return Fraction(0)
    return Poly.zero(jet.n)


def _check_pair(x_jet, y_jet):
    if (x_jet.n, x_jet.k) != (y_jet.n, y_jet.k):
        raise ValueError("jet order/dimension mismatch")
    if isinstance(x_jet, VectorJetPoint) and x_jet.point != y_jet.point:
        raise ValueError("base point mismatch")


def _lift_vector(section, lift_policy, rng=None, degree=2):
    if lift_policy == "zero":
        return section.lift(section.k + 1)
    if lift_policy == "random":
        if rng is None:
            raise ValueError("random lift needs an rng")
        n, k = section.n, section.k
        top = {}
        for alpha in multi_indices(n, k + 1, k_min=k + 1):
            for i in range(n):
                top[(i, alpha)] = _random_poly(n, rng, degree)
        return section.lift(k + 1, top)
    raise ValueError(f"unknown lift policy {lift_policy!r}")


def _lift_function(section, lift_policy, rng=None, degree=2):
    if lift_policy == "zero":
        return section.lift(section.k + 1)
    if lift_policy == "random":
        if rng is None:
            raise ValueError("random lift needs an rng")
        n, k = section.n, section.k
        top = {
            alpha: _random_poly(n, rng, degree)
            for alpha in multi_indices(n, k + 1, k_min=k + 1)
        }
        return section.lift(k + 1, top)
    raise ValueError(f"unknown lift policy {lift_policy!r}")


def _random_poly(n, rng, degree):
    return Poly(
        n,
        {
            alpha: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for alpha in multi_indices(n, degree)
            if rng.random() < 0.5
        },
    )


def _contract_with_order0(x_section, covector):
    """i(X^(0)) applied to a covector-indexed section: sum_a xi^a_0 part_a."""
    n = x_section.n
    zero = (0,) * n
    result = None
    for a in range(n):
        term = _scale_section(covector.part(a), x_section.slot(a, zero))
        result = term if result is None else result + term
    return result


def _scale_section(section, poly):
    """Multiply every slot of a jet section by a polynomial (module structure)."""
    if isinstance(section, VectorJetSection):
        return VectorJetSection(
            section.n, section.k, {s: p * poly for s, p in section.coeffs.items()}
        )
    return FunctionJetSection(
        section.n, section.k, {a: p * poly for a, p in section.coeffs.items()}
    )


def spencer_bracket(x_section, y_section, lift_policy="zero", rng=None):
    """The bracket on g_k sections: algebraic bracket of arbitrary lifts
    plus Spencer corrections.  Independent of the lifts; satisfies Jacobi.
    """
    if (x_section.n, x_section.k) != (y_section.n, y_section.k):
        raise ValueError("jet order/dimension mismatch")
    x_lift = _lift_vector(x_section, lift_policy, rng)
    y_lift = _lift_vector(y_section, lift_policy, rng)
    main = algebraic_bracket(x_lift, y_lift)
    dx = spencer_operator_vec(x_lift)
    dy = spencer_operator_vec(y_lift)
    return main + _contract_with_order0(x_section, dy) - _contract_with_order0(y_section, dx)


def algebraic_action_star(x_section, f_section):
    """The Leibniz action of g_k on J_{k+1}: slot alpha =
    sum_{beta<=alpha} C(alpha,beta) xi^a_beta f_{(alpha-beta)+e_a}."""
    if x_section.n != f_section.n or f_section.k != x_section.k + 1:
        raise ValueError("need orders k and k+1")
    n, k = x_section.n, x_section.k
    out = {}
    for alpha in multi_indices(n, k):
        total = Poly.zero(n)
        for beta in sub_indices(alpha):
            c = multi_binomial(alpha, beta)
            rest = sub(alpha, beta)
            for a in range(n):
                total = total + c * (
                    x_section.slot(a, beta) * f_section.slot(add(rest, unit(n, a)))
                )
        out[alpha] = total
    return FunctionJetSection(n, k, out)


def jet_action(x_section, f_section, lift_policy="zero", rng=None):
    """X f for a vector jet section X and function jet section f of equal
    order: the Leibniz action on a lift plus the Spencer correction."""
    if (x_section.n, x_section.k) != (f_section.n, f_section.k):
        raise ValueError("jet order/dimension mismatch")
    f_lift = _lift_function(f_section, lift_policy, rng)
    main = algebraic_action_star(x_section, f_lift)
    df = spencer_operator_fun(f_lift)
    return main + _contract_with_order0(x_section, df)


class JetGroupAlgebra:
    """The Lie algebra of the isotropy jet group at a point: slots
    (i, alpha) with 1 <= |alpha| <= k, bracket from the jet-level formula."""

    def __init__(self, n, k, check=True):
        if k < 1:
            raise ValueError("order must be at least 1")
        self.n = n
        self.k = k
        self.slots = vector_slots(n, k, min_order=1)
        self.dim = len(self.slots)
        self._index = {s: i for i, s in enumerate(self.slots)}
        self.structure = self._structure_constants()
        if check:
            ok, witness = self.check_jacobi()
            if not ok:
                raise AssertionError(f"Jacobi identity failed at {witness}")

    def _basis_jet(self, idx):
        i, alpha = self.slots[idx]
        return VectorJetPoint(
            self.n, self.k, (0,) * self.n, {(i, alpha): Fraction(1)}
        )

    def _structure_constants(self):
        table = {}
        for p in range(self.dim):
            for q in range(p + 1, self.dim):
                br = isotropy_bracket(self._basis_jet(p), self._basis_jet(q))
                col = [br.slot(i, alpha) for (i, alpha) in self.slots]
                for r, c in enumerate(col):
                    if c != 0:
                        table[(p, q, r)] = c
                        table[(q, p, r)] = -c
        return table

    def bracket_coords(self, u, v):
        out = [Fraction(0)] * self.dim
        for (p, q, r), c in self.structure.items():
            if u[p] != 0 and v[q] != 0:
                out[r] += c * u[p] * v[q]
        return out

    def check_jacobi(self):
        basis = []
        for p in range(self.dim):
            e = [Fraction(0)] * self.dim
            e[p] = Fraction(1)
            basis.append(e)
        for p in range(self.dim):
            for q in range(p + 1, self.dim):
                for r in range(q + 1, self.dim):
                    total = [Fraction(0)] * self.dim
                    for a, b, c in ((p, q, r), (q, r, p), (r, p, q)):
                        inner = self.bracket_coords(basis[b], basis[c])
                        term = self.bracket_coords(basis[a], inner)
                        total = [x + y for x, y in zip(total, term)]
                    if any(x != 0 for x in total):
                        return False, (p, q, r)
        return True, None

    def finite_lie_algebra(self):
        from .liealg import FiniteLieAlgebra

        c = {}
        for (p, q, r), v in self.structure.items():
            c[(p, q, r)] = v
        return FiniteLieAlgebra(self.dim, c)


def jet_group_algebra(n, k):
    return JetGroupAlgebra(n, k)
