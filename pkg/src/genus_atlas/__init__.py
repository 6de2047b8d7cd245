"""Classify finite groups by strong symmetric genus.

The strong symmetric genus of G is the smallest genus of a compact Riemann
surface on which G acts faithfully by orientation-preserving maps.  Groups
are taken from a bundled small-groups catalog and classified one genus at a
time through Riemann-Hurwitz enumeration, cheap algebraic filters and a
surface kernel epimorphism search.
"""

from .catalog import Catalog, CatalogRecord, GroupId, groups_of_order, parse_catalog, verify_catalog
from .classify import (
    CoverageError, classify_genus, classify_through, has_genus_one, has_genus_zero, nu_table,
    plot_csv,
)
from .db import ClassificationDB, GenusRecord, db_load, db_lookup, db_store
from .filters import run_filters, signature_abelianization
from .group import FiniteGroup, abelian_invariants, generate
from .perm import Permutation, compose
from .search import Witness, brute_force_epi_exists, find_surface_kernel_epi, validate_witness
from .signatures import CandidatePair, Signature, candidate_pairs, large_order_signatures, order_for, rh_genus

__version__ = "0.1.0"
