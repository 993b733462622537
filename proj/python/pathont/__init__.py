"""Python access to the pathont pipeline (C++ core)."""

from ._pathont import (
    Graph,
    PathontError,
    convert,
    extract_closure,
    lint,
    merge,
    parse_rdf_xml,
    parse_turtle,
    query,
    stats,
    term_page,
)

__all__ = [
    "Graph",
    "PathontError",
    "convert",
    "extract_closure",
    "lint",
    "merge",
    "parse_rdf_xml",
    "parse_turtle",
    "query",
    "stats",
    "term_page",
]
