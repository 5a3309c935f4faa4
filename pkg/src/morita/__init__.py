"""Skeletal category data, tube algebras, and Morita invertibility checks."""

from .errors import (AlgebraMismatch, DecompositionFailure, DegenerateSpectrum,
                     FormatError, GradingMismatch, InconsistentAction,
                     MismatchedRank, MissingBlock, MoritaError, NonUnitalFusion,
                     NumericalFailure, PipelineInconsistent, RankAmbiguous,
                     ShapeMismatch)
from .skeletal import (BimoduleData, FSymbols, GaugeTransform, ModuleData,
                       SkeletalCategory, apply_gauge, compute_fp_dims,
                       compute_module_dims, verify_pentagons, verify_unit_blocks,
                       verify_unitarity)
from .annular import (AlgElement, AnnularAlgebra, TubeLabel, build_algebra,
                      verify_wha)
from .repdecomp import (Intertwiner, Irrep, character, decompose, hom_dim,
                        intertwiners, schur_pair, tensor_module)
from .dualdata import assemble_dual, compute_f2, compute_f3, compute_f4
from .invertibility import (Verdict, character_gram, check_invertible,
                            check_matrix_orthogonality, check_mpo_injectivity)
from .vecg import (Cocycle, FiniteGroup, classical_irreps, crosscheck_vecg,
                   gen_vecg, group_by_name)
from .io import load, save

__version__ = "0.1.0"

__all__ = [
    "AlgElement", "AlgebraMismatch", "AnnularAlgebra", "BimoduleData",
    "Cocycle", "DecompositionFailure", "DegenerateSpectrum", "FSymbols",
    "FiniteGroup", "FormatError", "GaugeTransform", "GradingMismatch",
    "InconsistentAction", "Intertwiner", "Irrep", "MismatchedRank",
    "MissingBlock", "ModuleData", "MoritaError", "NonUnitalFusion",
    "NumericalFailure", "PipelineInconsistent", "RankAmbiguous",
    "ShapeMismatch", "SkeletalCategory", "TubeLabel", "Verdict",
    "apply_gauge", "assemble_dual", "build_algebra", "character",
    "character_gram", "check_invertible", "check_matrix_orthogonality",
    "check_mpo_injectivity", "classical_irreps", "compute_f2", "compute_f3",
    "compute_f4", "compute_fp_dims", "compute_module_dims", "crosscheck_vecg",
    "decompose", "gen_vecg", "group_by_name", "hom_dim", "intertwiners",
    "load", "save", "schur_pair", "tensor_module", "verify_pentagons",
    "verify_unit_blocks", "verify_unitarity", "verify_wha",
]
