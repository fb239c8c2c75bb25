"""twirlc - decoupling-sequence compiler built on additive codes over F2 and F4."""

__version__ = "1.0.0"
