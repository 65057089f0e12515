"""symdrift: induce, measure, and mitigate symbol drift in language-to-logic translation."""

__version__ = "0.1.0"
