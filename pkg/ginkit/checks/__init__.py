from .betti_cancellation import check_betti_cancellation
from .closed_form_match import check_closed_form
from .common import CheckContext, has_failures, make_issue
from .hilbert_equality import check_hilbert_equality, check_reconstruction
from .oracle_match import check_oracle
from .structure import check_structure

# name -> check, in the order they run
CHECKS = {
    "structure": check_structure,
    "hilbert": check_hilbert_equality,
    "closed-form": check_closed_form,
    "betti": check_betti_cancellation,
    "reconstruction": check_reconstruction,
    "oracle": check_oracle,
}

__all__ = [
    "CHECKS",
    "CheckContext",
    "has_failures",
    "make_issue",
]
