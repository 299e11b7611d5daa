"""stabcanon: stabilizer-circuit canonicalization and LNN synthesis toolkit."""

__version__ = "0.1.0"
