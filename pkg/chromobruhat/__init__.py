"""
chromobruhat - Bruhat-Intervalle, Inversionsarrangements und chromatische Polynome
"""
from chromobruhat.permutation import Permutation, PermutationError
from chromobruhat.version import get_version

__all__ = ['Permutation', 'PermutationError', 'get_version']
