"""Toolkit for the provability logic GL: formulas, Kripke semantics, decision
procedures, model surgery, and proof-stream simulators."""

__version__ = "0.1.0"
