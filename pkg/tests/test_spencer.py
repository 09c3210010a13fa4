import random
from fractions import Fraction

from jetcalc.jets import (
    FunctionJetSection,
    VectorJetPoint,
    VectorJetSection,
    prolong_function,
    prolong_vector_field,
    vector_slots,
)
from jetcalc.multiindex import multi_indices, unit
from jetcalc.poly import Poly
from jetcalc.spencer import (
    algebraic_bracket,
    isotropy_bracket,
    jet_action,
    jet_group_algebra,
    spencer_bracket,
    spencer_operator_fun,
    spencer_operator_vec,
)


def rand_poly(n, rng, degree=2):
    coeffs = {}
    for alpha in multi_indices(n, degree):
        c = rng.randint(-3, 3)
        if c:
            coeffs[alpha] = Fraction(c, rng.randint(1, 2))
    return Poly(n, coeffs)


def rand_vector_section(n, k, rng, degree=2):
    return VectorJetSection(
        n, k, {slot: rand_poly(n, rng, degree) for slot in vector_slots(n, k)}
    )


def rand_function_section(n, k, rng, degree=2):
    return FunctionJetSection(
        n, k, {alpha: rand_poly(n, rng, degree) for alpha in multi_indices(n, k)}
    )


def classical_bracket(x_comps, y_comps):
    n = len(x_comps)
    return [
        sum(
            (
                x_comps[a] * y_comps[i].diff(a)
                - y_comps[a] * x_comps[i].diff(a)
                for a in range(n)
            ),
            Poly.zero(n),
        )
        for i in range(n)
    ]


def test_spencer_operator_kills_holonomic():
    rng = random.Random(1)
    for _ in range(10):
        comps = [rand_poly(2, rng), rand_poly(2, rng)]
        section = prolong_vector_field(comps, 3)
        d = spencer_operator_vec(section)
        assert d.is_zero()
        f = prolong_function(rand_poly(2, rng), 3)
        assert spencer_operator_fun(f).is_zero()


def test_spencer_operator_slot_formula():
    rng = random.Random(2)
    x = rand_vector_section(2, 2, rng)
    d = spencer_operator_vec(x)
    for j in range(2):
        part = d.part(j)
        for i, alpha in vector_slots(2, 1):
            expected = x.slot(i, alpha).diff(j) - x.slot(
                i, tuple(a + b for a, b in zip(alpha, unit(2, j)))
            )
            assert part.slot(i, alpha) == expected


def test_algebraic_bracket_drops_one_order():
    rng = random.Random(3)
    x = rand_vector_section(2, 2, rng)
    y = rand_vector_section(2, 2, rng)
    br = algebraic_bracket(x, y)
    assert br.k == 1


def test_spencer_bracket_extends_the_classical_bracket():
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(1, 2)
        xc = [rand_poly(n, rng) for _ in range(n)]
        yc = [rand_poly(n, rng) for _ in range(n)]
        x = prolong_vector_field(xc, 2)
        y = prolong_vector_field(yc, 2)
        expected = prolong_vector_field(classical_bracket(xc, yc), 2)
        got = spencer_bracket(x, y)
        assert all(
            got.slot(i, a) == expected.slot(i, a) for i, a in vector_slots(n, 2)
        )


def test_spencer_bracket_lift_independent():
    rng = random.Random(5)
    for _ in range(20):
        x = rand_vector_section(2, 2, rng)
        y = rand_vector_section(2, 2, rng)
        a = spencer_bracket(x, y, lift_policy="zero")
        b = spencer_bracket(x, y, lift_policy="random", rng=rng)
        assert all(a.slot(i, al) == b.slot(i, al) for i, al in vector_slots(2, 2))


def test_spencer_bracket_antisymmetry_and_jacobi():
    rng = random.Random(6)
    for _ in range(5):
        x = rand_vector_section(2, 2, rng)
        y = rand_vector_section(2, 2, rng)
        z = rand_vector_section(2, 2, rng)
        xy = spencer_bracket(x, y)
        yx = spencer_bracket(y, x)
        assert all(
            xy.slot(i, a) == -yx.slot(i, a) for i, a in vector_slots(2, 2)
        )
        total = spencer_bracket(xy, z)
        total = total + spencer_bracket(spencer_bracket(y, z), x)
        total = total + spencer_bracket(spencer_bracket(z, x), y)
        assert all(p.is_zero() for p in total.coeffs.values())


def test_jet_action_leibniz_and_representation():
    from jetcalc.jets import jet_product

    rng = random.Random(7)
    for _ in range(5):
        x = rand_vector_section(2, 2, rng)
        y = rand_vector_section(2, 2, rng)
        f = rand_function_section(2, 2, rng)
        g = rand_function_section(2, 2, rng)
        lhs = jet_action(x, jet_product(f, g))
        rhs = jet_product(jet_action(x, f), g) + jet_product(f, jet_action(x, g))
        assert all(
            lhs.slot(a) == rhs.slot(a) for a in multi_indices(2, 2)
        )
        br = spencer_bracket(x, y)
        lhs2 = jet_action(br, f)
        rhs2 = jet_action(x, jet_action(y, f)) - jet_action(y, jet_action(x, f))
        assert all(lhs2.slot(a) == rhs2.slot(a) for a in multi_indices(2, 2))


def test_jet_action_on_holonomic_is_directional_derivative():
    rng = random.Random(8)
    for _ in range(5):
        comps = [rand_poly(2, rng), rand_poly(2, rng)]
        p = rand_poly(2, rng)
        x = prolong_vector_field(comps, 2)
        f = prolong_function(p, 2)
        xf = comps[0] * p.diff(0) + comps[1] * p.diff(1)
        got = jet_action(x, f)
        expected = prolong_function(xf, 2)
        assert all(got.slot(a) == expected.slot(a) for a in multi_indices(2, 2))


def test_isotropy_bracket_closes_at_full_order():
    rng = random.Random(9)
    for _ in range(10):
        coeffs_x = {}
        coeffs_y = {}
        for i, alpha in vector_slots(2, 2, min_order=1):
            coeffs_x[(i, alpha)] = Fraction(rng.randint(-3, 3))
            coeffs_y[(i, alpha)] = Fraction(rng.randint(-3, 3))
        x = VectorJetPoint(2, 2, (0, 0), coeffs_x)
        y = VectorJetPoint(2, 2, (0, 0), coeffs_y)
        br = isotropy_bracket(x, y)
        assert br.k == 2
        assert all(br.slot(i, (0, 0)) == 0 for i in range(2))


def test_jet_group_bracket_matches_truncated_field_bracket():
    """One-variable oracle: [x^a d, x^b d] = (b - a) x^(a+b-1) d, with
    monomials of degree above k truncated away in the order-k fibers."""
    g = jet_group_algebra(1, 3)
    slots = g.slots  # [(0,(1,)), (0,(2,)), (0,(3,))]

    def field_index(power):
        # slot (0, (a,)) holds the a-th derivative of x^a/a! ... the
        # basis jet with a 1 in slot (0,(a,)) is the jet of x^a / a!
        return slots.index((0, (power,)))

    from math import factorial

    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a == b:
                continue
            u = [Fraction(0)] * g.dim
            v = [Fraction(0)] * g.dim
            u[field_index(a)] = Fraction(factorial(a))  # jet of x^a
            v[field_index(b)] = Fraction(factorial(b))  # jet of x^b
            out = g.bracket_coords(u, v)
            c = a + b - 1
            expected = [Fraction(0)] * g.dim
            if c <= 3:
                expected[field_index(c)] = (b - a) * Fraction(factorial(c))
            assert out == expected


def test_jet_group_jacobi_and_liealg_export():
    for n, k in ((1, 3), (2, 2)):
        g = jet_group_algebra(n, k)
        ok, witness = g.check_jacobi()
        assert ok and witness is None
        finite = g.finite_lie_algebra()  # validates on construction
        assert finite.dim == g.dim
