"""
Staggered Temperley-Lieb lab: lattice models, Bethe Ansatz, torus partition
functions and the massive TBA of the Z2 staggered six-vertex model.
"""

__version__ = "0.1.0"
