"""
Network package для Feeder Switch Planner
"""

from .models import (
    CUSTOMER_CLASSES, Branch, CandidateSite, Construction, FeederFile, LoadPoint, Node, NodeKind,
    SiteKind, TransformerUnit,
)
from .topology import Network, ValidationReport, Violation, orient_branches, validate_network
from .loader import dump_network, load_network, network_from_dict, network_to_dict

__all__ = [
    'CUSTOMER_CLASSES', 'Branch', 'CandidateSite', 'Construction', 'FeederFile', 'LoadPoint', 'Node',
    'NodeKind', 'SiteKind', 'TransformerUnit',
    'Network', 'ValidationReport', 'Violation', 'orient_branches', 'validate_network',
    'dump_network', 'load_network', 'network_from_dict', 'network_to_dict',
]
