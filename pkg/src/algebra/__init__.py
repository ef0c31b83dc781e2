"""Inverse semigroup algebra: semigroups, partial bijections, congruences, actions."""
