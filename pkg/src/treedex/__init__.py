"""Degree-based topological indices of trees and an audit harness for
inequalities relating them."""

__version__ = "0.1.0"
