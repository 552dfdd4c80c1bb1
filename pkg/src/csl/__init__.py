"""Learning hidden coalition structures from one-bit equilibrium checks."""
from .gadgets import (
    AuctionInstance,
    GadgetProduct,
    GameStrategyPair,
    MatchingSchedule,
    auction_gadget,
    congestion_gadget,
    designed_item,
    normal_form_gadget,
    one_factorization,
    product,
)
from .learners import LearnResult, auction_ig, daig, graphical_ig, ig, potential
from .oracle import OracleHandle, ValueStream, brute_force_auction_ne, brute_force_ne
from .partition import (
    CoalitionStructure,
    bell_log2_lower_bound,
    random_structure,
    singletons,
)

__version__ = "0.1.0"
