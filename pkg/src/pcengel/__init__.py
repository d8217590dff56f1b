"""Engel conditions and coprime automorphisms of finite soluble groups.

Exact pc-presentation arithmetic, strongly central filtrations, associated
graded Lie rings with cyclotomic scalar extension, Engel decisions and the
certification suites built on them.
"""

from .automorphism import (
    Automorphism,
    automorphism_from_images,
    fixed_points,
    identity_automorphism,
    is_invariant,
    quotient_covering_check,
    search_automorphisms,
)
from .catalog import CatalogEntry, RunConfig, build_catalog, catalog_by_name, load_catalog
from .certify import (
    CertificationReport,
    LiteratureConstants,
    baer_check,
    closure_lemma_check,
    engel_suite,
    higman_check,
    main_theorem_check,
    run_suites,
    thompson_check,
    verify_higman_constants,
)
from .cyclotomic import CyclotomicRing
from .eigen import EigenDecomposition, eigenspace_decomposition, grading_check
from .engel import (
    EngelTable,
    adn0_check,
    adnk_index_check,
    char_p_identity_check,
    engel_profile,
    engel_table,
    engel_table_by_iteration,
    heineken_check,
    is_left_engel,
    is_right_engel,
    leibniz_check,
    linearization_sum,
)
from .errors import (
    CapacityError,
    HypothesisError,
    InputError,
    InvalidAutomorphismError,
    NonBijectiveError,
    ParseError,
    PcEngelError,
    Verdict,
)
from .filtration import (
    Filtration,
    custom_filtration,
    lcs_filtration,
    validate_strongly_central,
    zassenhaus_filtration,
)
from .liering import (
    GradedLieRing,
    GradedSpan,
    LieElement,
    associated_lie_ring,
    check_lie_axioms,
    class_equality_check,
    extend_scalars,
    fixed_subring,
    induced_automorphism,
    lie_nilpotency_class,
)
from .pcgroup import GroupElement, PcPresentation, commutator, consistency_check
from .subgroups import (
    Subgroup,
    centre,
    hypercentre,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    subgroup_closure,
    upper_central_series,
)
from .textformat import parse_file, parse_text, serialize

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
