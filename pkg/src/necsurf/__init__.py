"""Combinatorial realization of cyclic orientation-reversing surface
actions on real surfaces, with machine-checkable certificates.

The package builds NEC signatures and presentations, derives index-2
kernels by Reidemeister-Schreier rewriting, transports surface-kernel
epimorphisms, extends them to dihedral quotients, and verifies every
step with exact arithmetic.
"""

from .abelian import Abelianization, abelianization, integer_determinant, smith_normal_form
from .cosets import (
    CosetTable,
    NotInKernelError,
    SchreierSubgroup,
    cayley_coset_table,
    reidemeister_schreier,
)
from .groups import (
    CyclicElement,
    CyclicGroup,
    DihedralElement,
    DihedralGroup,
    FiniteHom,
    GroupMismatchError,
    PermutationElement,
    PermutationGroup,
    generated_subgroup,
)
from .kernels import (
    KernelSignatureReport,
    SurfaceKernelReport,
    kernel_signature_index2,
    surface_kernel_check,
)
from .pipeline import (
    ActionDatum,
    ActionValidationError,
    DerivedKernel,
    DihedralExtension,
    EnumerationResult,
    EtaResult,
    LemmaReport,
    PipelineAssertionError,
    RealizationCertificate,
    build_theta,
    construct_eta,
    derive_delta_hat,
    enumerate_smooth_epimorphisms,
    extend_to_dihedral,
    first_smooth_epimorphism,
    lemma1_check,
    realize,
    validate_action,
)
from .presentations import (
    HomCheck,
    Presentation,
    RelatorCertificate,
    UnsupportedSignatureError,
    canonical_presentation,
    check_homomorphism,
    orientation_character,
    verify_derived_relator,
    word_character,
)
from .signatures import (
    CONNECTOR,
    GLIDE,
    REFLECTION,
    GeneratorKind,
    NECSignature,
    NoSurfaceKernelError,
    elliptic,
    is_hyperbolic,
    quotient_disc_signature,
    reduced_area,
    riemann_hurwitz_index,
    surface_kernel_genus,
)
from .words import Word, free_reduce, reduce_mod_involutions

__version__ = "0.1.0"
