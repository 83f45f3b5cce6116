"""pimcheck: is the permutation module on G/H the projective cover of the trivial module?

Library layout:
  gfmat      exact dense linear algebra and polynomials over GF(p)
  permgrp    permutations, verified stabilizer chains, coset actions
  modrep     modules over group generators: spin, chop, isomorphism, fixed/hom spaces
  pimverify  the verdict logic, endomorphism-ring oracle, bound helpers
  catalog    validated group/subgroup data files
  manifest   batch runs with caching and deterministic reports
  cli        the `pimcheck` command
"""

from .backend import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
