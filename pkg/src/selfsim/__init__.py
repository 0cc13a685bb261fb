"""Self-similar actions from virtual endomorphisms: base-eta numeration on
Z_2, the Z^(omega) machine, and product / C_2 / lamplighter constructions."""

from .padic import (
    Eta,
    InvalidEta,
    OddArgument,
    Padic2,
    PrecisionExhausted,
    alpha_stream,
    eta_digits,
    eta_value,
    make_eta,
    p2_add,
    p2_div_eta,
    p2_mul,
    p2_neg,
    seeded_eta,
    v2,
)
from .engine import (
    Decomposition,
    Machine,
    MalformedMachine,
    StateSet,
    act_vertex,
    decompose,
    is_finite_state_gens,
    is_trivial_to_depth,
    portrait,
    restriction,
    states,
)
from .machines import Vect, adding_machine, dyadic_machine, iota, zomega_machine
from .constructions import (
    FiberViolation,
    ParabolicRequired,
    c2_extension,
    direct_product,
    economical_power,
    lamplighter,
    parabolic_trivial_probe,
)
from .verification import (
    IntMatrix,
    IntPoly,
    ShapeMismatch,
    block_chi_check,
    check_corefree_desk,
    level_transitivity_check,
    state_growth_probe,
)
