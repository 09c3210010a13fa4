import random
from fractions import Fraction

from jetcalc.arrows import (
    Arrow,
    compose_arrows,
    invert_arrow,
    pushforward_function_jet,
    pushforward_vector_jet,
)
from jetcalc.jets import (
    jet_product,
    prolong_function,
    prolong_vector_field,
)
from jetcalc.multiindex import multi_indices
from jetcalc.poly import Poly


def rand_point(n, rng):
    return tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(n))


def rand_arrow(n, k, source, rng):
    """A random arrow with invertible linear part, built from a random
    polynomial map of degree <= k."""
    while True:
        comps = []
        for i in range(n):
            coeffs = {}
            for alpha in multi_indices(n, k):
                c = rng.randint(-2, 2)
                if c:
                    coeffs[alpha] = Fraction(c, rng.randint(1, 2))
            comps.append(Poly(n, coeffs))
        try:
            a = Arrow.from_polynomial_map(comps, k, source)
        except ValueError:
            continue
        return a


def test_one_variable_chain_rule_worked_example():
    # g(x) = 2x + x^2 at 0, f(u) = 3u + 2u^2 at g(0) = 0:
    # (f o g)'(0) = 3*2 = 6, (f o g)''(0) = 3*2 + 2*2*4 = 22
    g = Arrow.from_polynomial_map(
        [Poly(1, {(1,): Fraction(2), (2,): Fraction(1)})], 2, (Fraction(0),)
    )
    f = Arrow.from_polynomial_map(
        [Poly(1, {(1,): Fraction(3), (2,): Fraction(2)})], 2, (Fraction(0),)
    )
    fg = compose_arrows(f, g)
    assert fg.slot(0, (1,)) == 6
    assert fg.slot(0, (2,)) == 3 * 2 + 2 * 2 * 2 * 2


def test_one_variable_inverse_worked_example():
    # a(x) = 2x + x^2: inverse derivative 1/2, second derivative -1/4
    a = Arrow.from_polynomial_map(
        [Poly(1, {(1,): Fraction(2), (2,): Fraction(1)})], 2, (Fraction(0),)
    )
    inv = invert_arrow(a)
    assert inv.slot(0, (1,)) == Fraction(1, 2)
    assert inv.slot(0, (2,)) == Fraction(-1, 4)


def test_groupoid_laws_randomized():
    """Associativity, identities, and inverses on 500 random arrows."""
    rng = random.Random(20240917)
    trials = 0
    while trials < 500:
        n = rng.randint(1, 3)
        k = rng.randint(1, 4)
        p = rand_point(n, rng)
        a = rand_arrow(n, k, p, rng)
        b = rand_arrow(n, k, a.target, rng)
        c = rand_arrow(n, k, b.target, rng)
        # associativity
        assert compose_arrows(c, compose_arrows(b, a)) == compose_arrows(
            compose_arrows(c, b), a
        )
        # identities
        assert compose_arrows(a, Arrow.identity(n, k, p)) == a
        assert compose_arrows(Arrow.identity(n, k, a.target), a) == a
        # inverses
        inv = invert_arrow(a)
        assert inv.source == a.target and inv.target == a.source
        assert compose_arrows(inv, a) == Arrow.identity(n, k, p)
        assert compose_arrows(a, inv) == Arrow.identity(n, k, a.target)
        trials += 1


def test_composition_agrees_with_polynomial_composition():
    """Chain-rule oracle: the arrow of a composite map equals the
    composite of the arrows."""
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 2)
        k = rng.randint(2, 3)
        p = rand_point(n, rng)
        a = rand_arrow(n, k, p, rng)
        b = rand_arrow(n, k, a.target, rng)
        amap = [
            d + Poly.const(n, t)
            for d, t in zip(a.displacement_polynomials(), a.target)
        ]
        amap = [comp.compose(
            [Poly.monomial(n, tuple(1 if t == j else 0 for t in range(n)))
             + Poly.const(n, -p[j]) for j in range(n)], 3 * k)
            for comp in amap]
        bdisp = b.displacement_polynomials()
        bmap = [
            d.compose(
                [ai + Poly.const(n, -b.source[j]) for j, ai in enumerate(amap)],
                3 * k,
            )
            + Poly.const(n, t)
            for d, t in zip(bdisp, b.target)
        ]
        direct = Arrow.from_polynomial_map(bmap, k, p)
        assert direct == compose_arrows(b, a)


def test_function_pushforward_is_algebra_map():
    rng = random.Random(9)
    for _ in range(10):
        n, k = 2, 2
        p = rand_point(n, rng)
        a = rand_arrow(n, k, p, rng)
        f = prolong_function(
            Poly(n, {al: Fraction(rng.randint(-3, 3)) for al in multi_indices(n, 2)}),
            k,
        ).at(p)
        g = prolong_function(
            Poly(n, {al: Fraction(rng.randint(-3, 3)) for al in multi_indices(n, 2)}),
            k,
        ).at(p)
        lhs = pushforward_function_jet(a, jet_product(f, g))
        rhs = jet_product(
            pushforward_function_jet(a, f), pushforward_function_jet(a, g)
        )
        assert lhs.as_vector() == rhs.as_vector()


def test_vector_pushforward_functorial():
    rng = random.Random(13)
    for _ in range(10):
        n, k = 2, 2
        p = rand_point(n, rng)
        a = rand_arrow(n, k + 1, p, rng)
        b = rand_arrow(n, k + 1, a.target, rng)
        comps = [
            Poly(n, {al: Fraction(rng.randint(-2, 2)) for al in multi_indices(n, 2)})
            for _ in range(n)
        ]
        x = prolong_vector_field(comps, k).at(p)
        via_both = pushforward_vector_jet(b, pushforward_vector_jet(a, x))
        direct = pushforward_vector_jet(compose_arrows(b, a), x)
        assert via_both.as_vector() == direct.as_vector()


def test_identity_pushforward_fixes_jets():
    rng = random.Random(17)
    n, k = 2, 2
    p = rand_point(n, rng)
    comps = [
        Poly(n, {al: Fraction(rng.randint(-2, 2)) for al in multi_indices(n, 2)})
        for _ in range(n)
    ]
    x = prolong_vector_field(comps, k).at(p)
    out = pushforward_vector_jet(Arrow.identity(n, k + 1, p), x)
    assert out.as_vector() == x.as_vector()
