"""Exact jet calculus over the rationals: jets, arrows, Spencer
calculus, jet-order differential forms, Lie algebra cohomology,
linear Lie equations, and transitive realized Lie algebras."""

__all__ = [
    "multiindex",
    "poly",
    "linalg",
    "jets",
    "arrows",
    "spencer",
    "forms",
    "liealg",
    "lie_equations",
    "klein",
    "cli",
]
