"""Certified extraction of long induced paths from structured graph classes."""

from .errors import CertificateError, ParseError, PreconditionError
from .graph import Graph, PathWitness, verify_path_witness
from .extractors import run as extract

__all__ = ["CertificateError", "Graph", "ParseError", "PathWitness", "PreconditionError", "extract", "verify_path_witness"]
