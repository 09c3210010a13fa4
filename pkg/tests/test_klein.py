from fractions import Fraction

import pytest

from jetcalc.klein import (
    RealizedLieAlgebra,
    bracket_fields,
    build_affine_example,
    build_projective_example,
    build_projective_line_example,
    isotropy_filtration,
    klein_order_of_system,
    realized_jet_family,
    sigma_homomorphism_check,
    sigma_injective,
    validate_realization,
)
from jetcalc.lie_equations import solve_system, StructureJet
from jetcalc.poly import Poly


def test_validate_realization_catches_wrong_constants():
    from jetcalc.liealg import FiniteLieAlgebra

    # claim [d, x d] = -d instead of d
    bad = FiniteLieAlgebra(
        2, {(0, 1, 0): Fraction(-1), (1, 0, 0): Fraction(1)}
    )
    fields = [[Poly.monomial(1, (0,))], [Poly.monomial(1, (1,))]]
    with pytest.raises(ValueError):
        RealizedLieAlgebra(bad, fields, (Fraction(0),))
    ok, witness = validate_realization(
        RealizedLieAlgebra(bad, fields, (Fraction(0),), check=False)
    )
    assert not ok and witness == (0, 1)


def test_affine_line_filtration():
    a = build_affine_example()
    assert a.is_transitive()
    rep = isotropy_filtration(a)
    assert rep["dims"][:2] == [1, 0]
    assert rep["order"] == 1
    assert rep["ghost_dim"] == 0


def test_projective_line_filtration():
    p = build_projective_line_example()
    rep = isotropy_filtration(p)
    assert rep["dims"][:3] == [2, 1, 0]
    assert rep["order"] == 2
    assert rep["ghost_dim"] == 0
    # effective at the stabilization order: jet evaluation is injective
    assert sigma_injective(p, rep["order"])


def test_gl2_projective_chart_has_scalar_ghost():
    g = build_projective_example(1)
    assert g.is_transitive()
    rep = isotropy_filtration(g)
    assert rep["dims"] == [3, 2, 1, 1]
    assert rep["order"] == 2
    assert rep["ghost_dim"] == 1
    # the ghost is the scalar matrices: coefficients equal on the two
    # diagonal cells, zero elsewhere
    (ghost,) = rep["ghost_basis"]
    diag = [ghost[0], ghost[3]]
    assert diag[0] == diag[1] != 0
    assert ghost[1] == ghost[2] == 0
    assert not sigma_injective(g, rep["order"])


def test_projective_plane_example():
    g = build_projective_example(2)
    rep = isotropy_filtration(g)
    assert rep["order"] == 2
    assert rep["ghost_dim"] == 1
    assert g.is_transitive()


def test_sigma_homomorphism_all_examples():
    for a in (
        build_affine_example(),
        build_projective_line_example(),
        build_projective_example(1),
    ):
        for m in (1, 2, 3):
            assert sigma_homomorphism_check(a, m)


def test_klein_order_of_flat_killing_system():
    one = Poly.const(2, 1)
    zero = Poly.zero(2)
    flat = StructureJet.from_polynomial_matrix(
        "metric", [[one, zero], [zero, one]], 4, (Fraction(0), Fraction(0))
    )
    family = [solve_system(flat, k) for k in range(1, 5)]
    assert klein_order_of_system(family, 4) == {
        "order": 1,
        "stabilized": True,
        "k_max": 4,
    }


def test_klein_order_of_projective_jets():
    g = build_projective_example(1)
    family = realized_jet_family(g, 4)
    assert [s.dim for s in family] == [2, 3, 3, 3]
    assert klein_order_of_system(family, 4)["order"] == 2


def test_full_fiber_family_does_not_stabilize():
    from jetcalc.jets import vector_slots
    from jetcalc.lie_equations import LinearJetSubspace

    family = []
    for k in range(1, 4):
        w = len(vector_slots(2, k))
        basis = [
            [Fraction(1) if i == j else Fraction(0) for j in range(w)]
            for i in range(w)
        ]
        family.append(LinearJetSubspace(2, k, (Fraction(0), Fraction(0)), basis))
    out = klein_order_of_system(family, 3)
    assert out["order"] is None and not out["stabilized"]


def test_filtration_invariant_under_chart_change():
    """Conjugating the realization by a polynomial chart change does not
    move the filtration dimensions."""
    p = build_projective_line_example()
    # substitute x -> x + x^2 (a chart change fixing 0); conjugated
    # fields are the pushforwards, computed symbolically via the inverse
    # substitution truncated beyond the jet orders probed
    depth = 8
    fwd = Poly(1, {(1,): Fraction(1), (2,): Fraction(1)})
    # inverse series of x + x^2, refined iteratively to high degree
    inv = Poly(1, {(1,): Fraction(1)})
    for _ in range(depth):
        comp = fwd.compose([inv], depth)
        err = comp - Poly(1, {(1,): Fraction(1)})
        inv = inv - err
    assert fwd.compose([inv], depth // 2) == Poly(1, {(1,): Fraction(1)})
    dfwd = fwd.diff(0)
    new_fields = []
    for f in p.fields:
        # pushforward: (phi_* X)(y) = phi'(phi^-1 y) X(phi^-1 y)
        comp = (dfwd * f[0]).compose([inv], depth // 2)
        new_fields.append([comp])
    q = RealizedLieAlgebra(p.algebra, new_fields, (Fraction(0),), check=False)
    rep_p = isotropy_filtration(p)
    rep_q = isotropy_filtration(q)
    assert rep_p["dims"] == rep_q["dims"]
    assert rep_p["order"] == rep_q["order"]
