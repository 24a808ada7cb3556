"""Spectral Galerkin solver for the ice-fishing sloshing problem with surface tension."""
