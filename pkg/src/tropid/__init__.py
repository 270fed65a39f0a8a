"""Semigroup identities of triangular tropical (max-plus) matrices."""

from .tropical import (BOTTOM, MatrixClass, SamplerConfig, TropMatrix, TropValue,
                       diag_equivalent, mat_mul, mat_pow, sample_matrix, tadd, tmul)
from .words import Word, WordClassSpec, enumerate_class, is_power_word, parse_word
from .identities import (Form, Identity, Mode, balance_substitute, check, construct_identity,
                         evaluate, fuzz, refine_two_variable)

__version__ = "0.1.0"
