"""A proof-term kernel for first-order intuitionistic logic with ground
identity, a beta-reduction engine, Lorenzen-style dialogue games driven by
proof terms, and a two-way finite-model evaluator."""

__version__ = "0.1.0"
