"""Exact modular symbols for congruence subgroups of SL2(Z) induced from
subgroups of GL2(Z/N), with Hecke operators, decompositions, and eigensystems.
"""

__version__ = "0.1.0"
