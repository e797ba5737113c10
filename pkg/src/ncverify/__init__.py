"""Numerical verification toolkit for hypercontractive inequalities on noncommutative algebras."""
