"""Novikov numbers, jump points and Novikov-Bott inequality checks for finite cell complexes."""
