"""Differential graded Poisson algebras and their universal enveloping algebras."""
