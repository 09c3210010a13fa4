from fractions import Fraction
from math import comb

import pytest

from jetcalc.liealg import (
    ExtensionData,
    FiniteLieAlgebra,
    extension_two_cocycle,
    is_split,
    nilpotency_analysis,
    relative_ce_cohomology_dims,
    ce_cohomology_dims,
    validate_lie_algebra,
)
from jetcalc.spencer import jet_group_algebra


def anti(structure):
    out = {}
    for (i, j, k), c in structure.items():
        out[(i, j, k)] = Fraction(c)
        out[(j, i, k)] = -Fraction(c)
    return out


def sl2():
    # basis h, e, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return FiniteLieAlgebra(
        3, anti({(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1})
    )


def heisenberg():
    # [x, y] = z
    return FiniteLieAlgebra(3, anti({(0, 1, 2): 1}))


def test_validator_produces_witnesses():
    ok, witness = validate_lie_algebra(2, {(0, 1, 0): Fraction(1)})
    assert not ok and witness[0] == "antisymmetry"
    # perturb sl2 so antisymmetry holds but Jacobi fails
    bad = anti({(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1, (1, 2, 1): 1})
    ok, witness = validate_lie_algebra(3, bad)
    assert not ok and witness[0] == "jacobi"


def test_abelian_cohomology_is_full_exterior_algebra():
    g = FiniteLieAlgebra(3, {})
    dims = ce_cohomology_dims(g, g.trivial_module(), 3)
    assert dims == [comb(3, r) for r in range(4)]


def test_sl2_trivial_coefficients():
    dims = ce_cohomology_dims(sl2(), sl2().trivial_module(), 3)
    assert dims == [1, 0, 0, 1]


def test_two_dimensional_nonabelian():
    g = FiniteLieAlgebra(2, anti({(0, 1, 1): 1}))
    dims = ce_cohomology_dims(g, g.trivial_module(), 2)
    assert dims == [1, 1, 0]


def test_relative_cohomology_reduces_to_absolute_for_zero_subalgebra():
    g = sl2()
    absolute = ce_cohomology_dims(g, g.trivial_module(), 2)
    relative = relative_ce_cohomology_dims(g, [], g.trivial_module(), 2)
    assert absolute[: len(relative)] == relative


def test_heisenberg_central_extension_does_not_split():
    g = heisenberg()
    ext = ExtensionData(g, [2])
    assert ext.ideal_is_abelian()
    cocycle = extension_two_cocycle(ext)
    assert any(any(c != 0 for c in v) for v in cocycle.values())
    assert not is_split(ext)


def test_direct_sum_extension_splits():
    # abelian 3-dim algebra, ideal spanned by the last coordinate
    g = FiniteLieAlgebra(3, {})
    ext = ExtensionData(g, [2])
    assert is_split(ext)


def test_nilpotency_analysis():
    h = nilpotency_analysis(heisenberg())
    assert h["lower_central_series_dims"] == [3, 1, 0]
    assert h["nilpotent"] and not h["abelian"]
    a = nilpotency_analysis(FiniteLieAlgebra(2, {}))
    assert a["abelian"]
    s = nilpotency_analysis(sl2())
    assert not s["nilpotent"]


def test_one_variable_jet_group_structure():
    """L(G_3) in one variable: with the jets of x d, x^2 d, x^3 d as
    basis, the brackets are [e1, e2] = e2, [e1, e3] = 2 e3, [e2, e3] = 0
    (the degree-4 field truncates away in order-3 jets)."""
    g = jet_group_algebra(1, 3)
    assert g.slots == [(0, (1,)), (0, (2,)), (0, (3,))]
    e = []
    from math import factorial

    for power in (1, 2, 3):
        v = [Fraction(0)] * 3
        v[power - 1] = Fraction(factorial(power))
        e.append(v)
    assert g.bracket_coords(e[0], e[1]) == e[1]
    assert g.bracket_coords(e[0], e[2]) == [2 * c for c in e[2]]
    assert g.bracket_coords(e[1], e[2]) == [Fraction(0)] * 3


def test_one_variable_jet_group_extension_splits_with_abelian_kernel():
    """The order-3 jet group over the order-1 quotient in one variable:
    the ideal (jets of x^2 d, x^3 d) is abelian after truncation and the
    natural section is already a homomorphism, so the extension splits."""
    from jetcalc.multiindex import order

    g = jet_group_algebra(1, 3)
    E = g.finite_lie_algebra()
    a_indices = [i for i, (c, al) in enumerate(g.slots) if order(al) > 1]
    ext = ExtensionData(E, a_indices)
    assert ext.ideal_is_abelian()
    cocycle = extension_two_cocycle(ext)
    assert all(all(c == 0 for c in v) for v in cocycle.values())
    assert is_split(ext)
    nil = nilpotency_analysis(ext.ideal_algebra())
    assert nil["abelian"]


def test_two_variable_jet_group_extension_is_nonsplit_with_nonabelian_kernel():
    """In two variables the same construction behaves differently: the
    order-3 group over the order-1 quotient is a genuinely non-split
    extension and the kernel is nilpotent but not abelian."""
    from jetcalc.multiindex import order

    g = jet_group_algebra(2, 3)
    E = g.finite_lie_algebra()
    assert E.dim == 18
    a_indices = [i for i, (c, al) in enumerate(g.slots) if order(al) > 1]
    ext = ExtensionData(E, a_indices)
    assert not ext.ideal_is_abelian()
    nil = nilpotency_analysis(ext.ideal_algebra())
    assert nil["lower_central_series_dims"] == [14, 8, 0]
    assert nil["nilpotent"] and not nil["abelian"]
    # the abelian sub-extension over the order-2 quotient does not split
    m2_indices = [i for i, (c, al) in enumerate(g.slots) if order(al) > 2]
    ext2 = ExtensionData(E, m2_indices)
    assert ext2.ideal_is_abelian()
    cocycle = extension_two_cocycle(ext2)
    nonzero = sum(1 for v in cocycle.values() if any(c != 0 for c in v))
    assert nonzero > 0
    assert not is_split(ext2)
