"""Static detection of Android ICC security code smells."""

from iccsmells.common import Confidence, ParseDiagnostic, SourceLocation

__version__ = "0.1.0"

__all__ = ["Confidence", "ParseDiagnostic", "SourceLocation", "__version__"]
