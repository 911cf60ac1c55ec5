"""Exact combinatorics of the totally nonnegative Grassmannian.

Subpackages:
  exactmath     rational matrices, Plucker coordinates, matroids, partitions
  network       planar directed networks and boundary measurements
  lediagram     Le-diagrams/tableaux, their networks, the inverse procedure
  plabic        plabic graphs and networks, moves, trips, reductions
  permutations  decorated permutations, necklaces, the circular Bruhat order
  enumeration   cell counts and q-analogues
  cli           the `positroid` command-line tool
"""

__version__ = "0.1.0"
