"""Realized Lie algebras of polynomial vector fields: the isotropy
filtration by vanishing order at a base point, the order and ghost of
the realization, the jet-evaluation homomorphism, and the projective
examples."""

from fractions import Fraction

from .jets import prolong_vector_field, vector_slots
from .liealg import FiniteLieAlgebra
from .linalg import nullspace, rank
from .poly import Poly, _as_fraction
from .spencer import algebraic_bracket


def bracket_fields(x_comps, y_comps):
    """Bracket of polynomial vector fields, componentwise."""
    n = len(x_comps)
    out = []
    for i in range(n):
        p = Poly.zero(n)
        for a in range(n):
            p = p + x_comps[a] * y_comps[i].diff(a)
            p = p - y_comps[a] * x_comps[i].diff(a)
        out.append(p)
    return out


class RealizedLieAlgebra:
    """An abstract Lie algebra together with polynomial vector fields
    realizing its basis on a chart, anchored at a base point."""

    __slots__ = ("algebra", "fields", "n", "point")

    def __init__(self, algebra, fields, point, check=True):
        if len(fields) != algebra.dim:
            raise ValueError("one field per abstract basis element")
        self.algebra = algebra
        self.fields = [list(f) for f in fields]
        self.n = len(fields[0])
        for f in self.fields:
            if len(f) != self.n or any(p.n != self.n for p in f):
                raise ValueError("field component dimension mismatch")
        self.point = tuple(_as_fraction(x) for x in point)
        if check:
            ok, witness = validate_realization(self)
            if not ok:
                raise ValueError(f"realization is not a homomorphism: {witness}")

    def combination(self, coords):
        """The polynomial field realizing an abstract coefficient vector."""
        out = [Poly.zero(self.n) for _ in range(self.n)]
        for b, c in enumerate(coords):
            if c == 0:
                continue
            for i in range(self.n):
                out[i] = out[i] + self.fields[b][i] * Poly.const(self.n, c)
        return out

    def jet_at_point(self, coords, k):
        """Order-k jet of the realized field at the base point, in
        fiber coordinates."""
        section = prolong_vector_field(self.combination(coords), k)
        return section.at(self.point).as_vector()

    def is_transitive(self):
        values = [
            [p.evaluate(self.point) for p in f] for f in self.fields
        ]
        return rank(values) == self.n

    def realization_kernel(self):
        """Abstract vectors mapping to the identically zero field."""
        deg = 0
        for f in self.fields:
            for p in f:
                for alpha in p.coeffs:
                    deg = max(deg, sum(alpha))
        # a polynomial field of degree <= deg vanishes iff its jet of
        # order deg at any point vanishes
        mat = [self.jet_at_point(unit_vec(self.algebra.dim, b), deg) for b in range(self.algebra.dim)]
        return left_nullspace(mat)


def unit_vec(dim, b):
    v = [Fraction(0)] * dim
    v[b] = Fraction(1)
    return v


def left_nullspace(rows):
    """Coefficient vectors c with sum_b c_b rows[b] = 0."""
    if not rows:
        return []
    width = len(rows[0])
    transposed = [[rows[b][j] for b in range(len(rows))] for j in range(width)]
    return nullspace(transposed, cols=len(rows))


def validate_realization(a):
    """Whether the realization is a Lie algebra homomorphism; returns
    (ok, witness) with the offending basis pair on failure."""
    dim = a.algebra.dim
    for i in range(dim):
        for j in range(i + 1, dim):
            direct = bracket_fields(a.fields[i], a.fields[j])
            image = a.combination(
                a.algebra.bracket(unit_vec(dim, i), unit_vec(dim, j))
            )
            if any(p != q for p, q in zip(direct, image)):
                return False, (i, j)
    return True, None


def isotropy_filtration(a, depth_max=10):
    """Dimensions of the decreasing chain h_k of abstract elements whose
    realized fields vanish to order k at the base point, with the
    stabilization order and the ghost (the stable subspace).

    The ghost is cross-checked to be an ideal and to coincide with the
    kernel of the realization; a mismatch raises instead of being
    resolved silently.
    """
    dim = a.algebra.dim
    jets = {}

    def h_basis(k):
        if k not in jets:
            mat = [a.jet_at_point(unit_vec(dim, b), k) for b in range(dim)]
            jets[k] = left_nullspace(mat)
        return jets[k]

    # the chain is decreasing and bounded below by the realization
    # kernel; it stabilizes exactly when it first reaches the kernel
    kernel = a.realization_kernel()
    dims = []
    order = None
    for k in range(depth_max + 1):
        dims.append(len(h_basis(k)))
        if dims[-1] == len(kernel):
            order = k
            break
    if order is None:
        return {
            "dims": dims,
            "order": None,
            "stabilized": False,
            "ghost_dim": None,
            "ghost_basis": None,
        }
    # verify stabilization one step beyond the reported order
    dims.append(len(h_basis(order + 1)))
    if dims[-1] != len(kernel):
        raise AssertionError("filtration dipped below the realization kernel")
    ghost = h_basis(order)
    if ghost and rank(ghost + kernel) != len(ghost):
        raise AssertionError(
            "stable filtration subspace differs from the realization kernel"
        )
    for b in range(dim):
        for g in ghost:
            br = a.algebra.bracket(unit_vec(dim, b), g)
            if any(c != 0 for c in br) and (
                not ghost or rank(ghost + [br]) != len(ghost)
            ):
                raise AssertionError("ghost is not an ideal")
    return {
        "dims": dims[: order + 2],
        "order": order,
        "stabilized": True,
        "ghost_dim": len(ghost),
        "ghost_basis": ghost,
    }


def sigma_homomorphism_check(a, m):
    """Whether jet evaluation at the base point intertwines the abstract
    bracket with the algebraic bracket on jets (which drops one order)."""
    if m < 1:
        raise ValueError("order must be at least 1")
    dim = a.algebra.dim
    point = a.point
    from .jets import vector_point_from_coords

    for i in range(dim):
        for j in range(i + 1, dim):
            xi = vector_point_from_coords(
                a.n, m, point, a.jet_at_point(unit_vec(dim, i), m)
            )
            yj = vector_point_from_coords(
                a.n, m, point, a.jet_at_point(unit_vec(dim, j), m)
            )
            alg = algebraic_bracket(xi, yj)
            abstract = a.algebra.bracket(unit_vec(dim, i), unit_vec(dim, j))
            direct = vector_point_from_coords(
                a.n, m - 1, point, a.jet_at_point(abstract, m - 1)
            )
            if alg.as_vector() != direct.as_vector():
                return False
    return True


def sigma_injective(a, m):
    """Whether jet evaluation of order m is injective on the abstract
    algebra."""
    dim = a.algebra.dim
    mat = [a.jet_at_point(unit_vec(dim, b), m) for b in range(dim)]
    return rank(mat) == dim


def realized_jet_family(a, k_max):
    """Solution-style subspaces spanned by the realized jets at the base
    point, for orders 1..k_max."""
    from .lie_equations import LinearJetSubspace

    dim = a.algebra.dim
    family = []
    for k in range(1, k_max + 1):
        mat = [a.jet_at_point(unit_vec(dim, b), k) for b in range(dim)]
        # reduce to an independent spanning set
        basis = []
        for v in mat:
            if any(c != 0 for c in v) and (
                not basis or rank(basis + [v]) > len(basis)
            ):
                basis.append(v)
        family.append(LinearJetSubspace(a.n, k, a.point, basis))
    return family


def klein_order_of_system(family, k_max):
    """Least order m such that every higher restricted projection in the
    family is bijective; reports non-stabilization honestly."""
    from .lie_equations import restrict_projection

    if len(family) < k_max:
        raise ValueError("family must cover orders 1..k_max")
    bijective_from = None
    for m in range(k_max - 1, 0, -1):
        sub_hi = family[m]
        sub_lo = family[m - 1]
        _, rk, ker = restrict_projection(sub_hi, m)
        if rk == sub_lo.dim and ker == 0:
            bijective_from = m
        else:
            break
    if bijective_from is None:
        return {"order": None, "stabilized": False, "k_max": k_max}
    return {"order": bijective_from, "stabilized": True, "k_max": k_max}


def _antisymmetrize(structure):
    """Fill in the reversed-pair structure constants."""
    out = {}
    for (i, j, k), c in structure.items():
        out[(i, j, k)] = Fraction(c)
        out[(j, i, k)] = -Fraction(c)
    return out


def build_affine_example():
    """The affine line: constant and linear fields on one variable."""
    algebra = FiniteLieAlgebra(2, _antisymmetrize({(0, 1, 0): Fraction(1)}))
    d = [Poly.monomial(1, (0,))]
    xd = [Poly.monomial(1, (1,))]
    return RealizedLieAlgebra(algebra, [d, xd], (Fraction(0),))


def build_projective_line_example():
    """The projective line: the span of d/dx, x d/dx, x^2 d/dx."""
    structure = {
        (0, 1, 0): Fraction(1),
        (0, 2, 1): Fraction(2),
        (1, 2, 2): Fraction(1),
    }
    algebra = FiniteLieAlgebra(3, _antisymmetrize(structure))
    fields = [
        [Poly.monomial(1, (0,))],
        [Poly.monomial(1, (1,))],
        [Poly.monomial(1, (2,))],
    ]
    return RealizedLieAlgebra(algebra, fields, (Fraction(0),))


def build_projective_example(n):
    """The full linear algebra of the (n+1)-dimensional space, realized
    by the fractional-linear fields on the standard n-dimensional chart:
    the basis cell (u, v) acts by x_v d/d x_u for u, v < n, the last
    column gives translations, the last row the degree-two fields
    -x_v sum_a x_a d/d x_a, and the corner the radial field."""
    if n < 1:
        raise ValueError("chart dimension must be at least 1")
    m = n + 1
    cells = [(u, v) for u in range(m) for v in range(m)]
    pos = {c: i for i, c in enumerate(cells)}
    structure = {}
    for p, (u, v) in enumerate(cells):
        for q, (w, z) in enumerate(cells):
            if q <= p:
                continue
            out = {}
            if v == w:
                out[(u, z)] = out.get((u, z), Fraction(0)) + 1
            if z == u:
                out[(w, v)] = out.get((w, v), Fraction(0)) - 1
            for cell, c in out.items():
                if c != 0:
                    structure[(p, q, pos[cell])] = Fraction(c)
    algebra = FiniteLieAlgebra(m * m, _antisymmetrize(structure))

    def e(i):
        return tuple(1 if t == i else 0 for t in range(n))

    radial = [Poly.monomial(n, e(a)) for a in range(n)]
    fields = []
    for u, v in cells:
        if u < n and v < n:
            comps = [Poly.zero(n) for _ in range(n)]
            comps[u] = Poly.monomial(n, e(v))
        elif u < n and v == n:
            comps = [Poly.zero(n) for _ in range(n)]
            comps[u] = Poly.const(n, 1)
        elif u == n and v < n:
            comps = [
                Poly.monomial(n, e(v), -1) * radial_component
                for radial_component in radial
            ]
        else:
            comps = [Poly.monomial(n, e(a), -1) for a in range(n)]
        # the flow construction yields an anti-homomorphism; negate to
        # land in the stated structure constants
        fields.append([p * Poly.const(n, -1) for p in comps])
    return RealizedLieAlgebra(algebra, fields, (Fraction(0),) * n)
