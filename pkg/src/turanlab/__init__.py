"""Exact, desk-scale laboratory for hypergraph Turan problems.

The pieces: hypercore (the Hypergraph type, canonical labeling, blow-ups),
families (the gadget constructions and their string specs), morphisms
(embedding and homomorphism search plus the cycling maps), extremal (exact
and heuristic Turan numbers, density series), and cli (the command line
front end).
"""

from turanlab.hypercore import (
    Hypergraph,
    blow_up,
    blow_up_vertex,
    canonical_form,
    complete_kgraph,
    complete_multipartite,
    is_isomorphic,
    new_hypergraph,
)

__all__ = [
    "Hypergraph",
    "blow_up",
    "blow_up_vertex",
    "canonical_form",
    "complete_kgraph",
    "complete_multipartite",
    "is_isomorphic",
    "new_hypergraph",
]

__version__ = "0.1.0"
