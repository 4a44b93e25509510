"""Place-relation equivalences of finite P/T nets.

Decides place, d-place, i-place and i-d-place bisimilarity of markings,
verifies candidate place relations, and ships brute-force oracles for
cross-checking.
"""

from .closure import (
    DUMMY,
    PLAIN,
    PairingWitness,
    PlaceRelation,
    closure_contains,
    related,
    related_markings,
    relation_compose,
    relation_identity,
    relation_inverse,
    substitution_images,
)
from .fixtures import corpus, fixture
from .decide import Verdict, decide, enumerate_bisimulations, maximal_bisimulations
from .errors import (
    BoundExceeded,
    BudgetExceeded,
    MultiplicityOverflow,
    NetFormatError,
    NotEnabled,
    PneqError,
    TooLarge,
    UnknownPlace,
    UnknownTransition,
)
from .format import NetDocument, RelationDocument, parse_marking, parse_net, parse_relation, serialize_net, serialize_relation
from .multiset import EMPTY, Multiset, difference, union
from .net import Net, Step, Transition, enabled, enabled_steps, fire, fire_step, make_step, reachable
from .verify import (
    CheckReport,
    Obligation,
    verify,
    verify_dplace,
    verify_idplace,
    verify_iplace,
    verify_place,
)

__version__ = "0.1.0"
