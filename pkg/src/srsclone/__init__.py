"""Clone detection and redundancy metrics for natural-language requirements documents.

The toolkit turns a corpus of plain-text specification documents into a
normalized word stream (tokenization, stop-word removal, stemming), finds
all passages of a configurable minimum length that occur at least twice,
supports regex-based tailoring to remove false positives, and quantifies
the cost of the duplication (coverage, blow-up, reading and inspection
effort).
"""

__version__ = "0.1.0"

TOOL_NAME = "srsclone"
