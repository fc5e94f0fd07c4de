"""Low-order concordance invariants of string links."""

from .diagram import (
    ClosedDiagram,
    DiagramError,
    EventKind,
    MorseEvent,
    StringLinkDiagram,
    borromean,
    braid_generator_A,
    closure,
    commutator,
    figure_eight_component,
    format_diagram,
    from_braid_word,
    inverse,
    parse_diagram,
    stack,
    trivial,
    twisted_hopf,
    validate,
    whitehead,
)
from .filtration import (
    ClassificationVector,
    Level,
    SolvabilityVerdict,
    TwoComponentClass,
    classify_full_2comp,
    classify_linking,
    classify_zero,
    verdict,
)
from .invariants import (
    IntPolynomial,
    LinkingNumberError,
    arf,
    component_knot,
    conway,
    linking_number,
    sato_levine,
    triple_linking,
)
from .magnus import MilnorReport, TruncatedSeries, expand, milnor, report
from .verify import CheckResult, run_all
from .wirtinger import FreeWord, WirtingerPresentation, longitude, presentation

__version__ = "0.1.0"
