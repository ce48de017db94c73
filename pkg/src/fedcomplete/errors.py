"""Exception types shared across the engine."""

from __future__ import annotations


class FedCompleteError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FedCompleteError):
    """Syntax error in an N-Triples file or a query, with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ConfigError(FedCompleteError):
    """Invalid federation configuration (bad JSON, missing files, duplicate ids)."""


class UnknownEndpointError(FedCompleteError):
    """A catalog or operator referenced an endpoint the federation does not serve."""


class EndpointUnavailableError(FedCompleteError):
    """An endpoint refused to answer (failure switch thrown, for tests)."""

    def __init__(self, endpoint_id: str):
        super().__init__(f"endpoint unavailable: {endpoint_id}")
        self.endpoint_id = endpoint_id


class UnboundPredicateError(FedCompleteError):
    """Relevance is undefined for a triple pattern whose predicate is a variable."""


class NoMappingError(FedCompleteError):
    """No property correspondence exists to rewrite a pattern into a target schema."""


class NoCandidateError(FedCompleteError):
    """No molecule template in the catalog can serve as a root for a pattern."""
