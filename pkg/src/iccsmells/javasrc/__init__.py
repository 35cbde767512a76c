"""Lightweight Java source model used by the detectors."""

from iccsmells.javasrc.analysis import parse_source_unit
from iccsmells.javasrc.model import (
    ArgSummary, BodySummary, CallSite, ConstValue, IntentClass, MethodDecl, ReceiverKind,
    SourceUnit, StatementKind, TypeDecl, classify_intent_argument,
)

__all__ = [
    "ArgSummary", "BodySummary", "CallSite", "ConstValue", "IntentClass", "MethodDecl",
    "ReceiverKind", "SourceUnit", "StatementKind", "TypeDecl", "classify_intent_argument",
    "parse_source_unit",
]
