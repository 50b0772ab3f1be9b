"""
Population sizes of autocorrelations and correlations.
Suffix recurrence, lattice (nfc) recurrence and the three correlation methods.
"""
from .autocorrelation import (
    ExtendedAutocorrelation,
    PsiSequence,
    lattice_table,
    nfc,
    pop_auto,
    pop_auto_lattice,
    psi,
)
from .correlation import CandidateForm, Method, g_decomposition, pop_corr, pop_left, pop_right

__all__ = [
    'CandidateForm',
    'ExtendedAutocorrelation',
    'Method',
    'PsiSequence',
    'g_decomposition',
    'lattice_table',
    'nfc',
    'pop_auto',
    'pop_auto_lattice',
    'pop_corr',
    'pop_left',
    'pop_right',
    'psi',
]
