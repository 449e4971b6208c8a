"""Caret-type normal forms for Thompson's group F and the counter automata
that recognise them.

Modules:

``automata``     counter machines, finite automata and their combinators
``treecalc``     tree pair diagrams: encoding, reduction, multiplication
``acceptor``     the 2-counter normal-form acceptor
``multipliers``  multiplier machines for x0, x1 and their inverses
``verify``       cross-checks of every machine against the tree-pair oracle
``cli``          command-line front end
"""
from .acceptor import build_acceptor, ogden_witness, quasigeodesic_report
from .multipliers import build_multipliers
from .treecalc import (TreePair, decode_pair, decode_tree, encode_pair, encode_tree, generator,
                       multiply, reduce)

__all__ = [
    "TreePair", "build_acceptor", "build_multipliers", "decode_pair", "decode_tree",
    "encode_pair", "encode_tree", "generator", "multiply", "ogden_witness",
    "quasigeodesic_report", "reduce",
]
__version__ = "0.1.0"
