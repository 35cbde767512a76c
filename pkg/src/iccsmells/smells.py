"""Catalog of the twelve smells and the threats each one enables."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class ThreatClass(str, enum.Enum):
    DENIAL_OF_SERVICE = "denial_of_service"
    INTENT_SPOOFING = "intent_spoofing"
    INTENT_HIJACKING = "intent_hijacking"

    @property
    def description(self) -> str:
        return _THREAT_TEXT[self]


_THREAT_TEXT = {
    ThreatClass.DENIAL_OF_SERVICE: "another app can make a component crash, stall or become unusable",
    ThreatClass.INTENT_SPOOFING: "another app can send forged intents that a component trusts",
    ThreatClass.INTENT_HIJACKING: "another app can intercept an intent meant for a trusted component",
}


@dataclass(frozen=True)
class Smell:
    id: str
    title: str
    description: str
    mitigation: str

    @property
    def number(self) -> int:
        return int(self.id[2:])


SMELLS: tuple[Smell, ...] = (
    Smell("SM01", "Persisted Dynamic Permission",
          "A URI permission is granted at runtime and never taken back.",
          "Call revokeUriPermission once the receiving component no longer needs access, "
          "or pass a one-shot grant flag on the intent instead."),
    Smell("SM02", "Custom Scheme Channel",
          "A component accepts data URIs with an app-defined scheme that any app can claim.",
          "Prefer verified https App Links over private schemes and validate every parameter "
          "read from an incoming URI."),
    Smell("SM03", "Incorrect Protection Level",
          "A custom permission is declared without a protection level, so it defaults to normal.",
          "Give every custom permission an explicit protectionLevel; use signature for "
          "permissions meant only for your own apps."),
    Smell("SM04", "Unauthorized Intent",
          "An implicit intent is sent without restricting who may receive it.",
          "Name the target component or package, or require a receiver permission when broadcasting."),
    Smell("SM05", "Sticky Broadcast",
          "A sticky broadcast stays readable and replaceable by any app after it is sent.",
          "Replace sticky broadcasts with regular broadcasts plus explicit state queries."),
    Smell("SM06", "Slack WebViewClient",
          "A WebViewClient lets the WebView open any URL without checking where it leads.",
          "In shouldOverrideUrlLoading, load only hosts on an allowlist and hand other URLs "
          "to an external browser."),
    Smell("SM07", "Broken Service Permission",
          "A service checks the permission of itself or of the wrong caller identity.",
          "Check the caller with checkCallingPermission or enforceCallingPermission, and guard "
          "the service with android:permission in the manifest."),
    Smell("SM08", "Insecure Path Permission",
          "Path permissions are combined with UriMatcher, whose path handling differs from them.",
          "Do not rely on UriMatcher to mirror path-permission rules; normalize paths and check "
          "the caller's permission inside the provider."),
    Smell("SM09", "Broken Path Permission Precedence",
          "A provider uses path permissions whose precedence over provider-wide permissions is unreliable.",
          "Protect the whole provider with the strictest permission and check path-specific access "
          "in code."),
    Smell("SM10", "Unprotected Broadcast Receiver",
          "A receiver is registered at runtime without a sender permission, so any app can reach it.",
          "Pass a broadcastPermission to registerReceiver, mark it not exported, or use an "
          "in-process broadcast mechanism."),
    Smell("SM11", "Implicit Pending Intent",
          "A pending intent wraps an implicit intent that another app could redirect.",
          "Wrap only explicit intents in a PendingIntent and request FLAG_IMMUTABLE."),
    Smell("SM12", "Common Task Affinity",
          "An activity shares a non-empty task affinity that a malicious activity can join.",
          "Set taskAffinity=\"\" on the application element and override it only where needed."),
)

SMELL_BY_ID: dict[str, Smell] = {s.id: s for s in SMELLS}
SMELL_IDS: tuple[str, ...] = tuple(s.id for s in SMELLS)

# Threat rows as smell membership lists.
_THREAT_ROWS: dict[ThreatClass, tuple[int, ...]] = {
    ThreatClass.DENIAL_OF_SERVICE: (1, 2, 3, 4, 6, 7, 10, 12),
    ThreatClass.INTENT_SPOOFING: (2, 3, 4, 5, 7, 8, 9, 10, 11),
    ThreatClass.INTENT_HIJACKING: (2, 3, 4, 5, 10, 11),
}


def smell(smell_id: str) -> Smell:
    try:
        return SMELL_BY_ID[normalize_smell_id(smell_id)]
    except (KeyError, ValueError):
        raise ValueError(f"unknown smell id: {smell_id!r}") from None


def normalize_smell_id(text: str) -> str:
    """Accept ``SM4``, ``sm04`` or ``4`` and return ``SM04``."""
    t = text.strip().upper()
    if t.startswith("SM"):
        t = t[2:]
    if not t.isdigit() or not 1 <= int(t) <= 12:
        raise ValueError(f"unknown smell id: {text!r}")
    return f"SM{int(t):02d}"


def map_threats(smell_id: str) -> tuple[ThreatClass, ...]:
    number = smell(smell_id).number
    return tuple(t for t in ThreatClass if number in _THREAT_ROWS[t])
