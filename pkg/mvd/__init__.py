"""
Mutual-visibility toolkit for directed graphs
Exact mutual-visibility numbers, polynomial set verification, SCC and
strong-bridge analysis, and generators for the witness graph families
"""

__version__ = "1.0.0"

from .digraph import Digraph, from_edge_list, to_edge_list
from .errors import BudgetExceededError, CapExceededError, DomainError, MvdError
from .solver import MuResult, mu
from .visibility import VisibilityVariant, verify
