"""Multipass greedy coloring of uniform hypergraphs.

Core objects live in the submodules: :mod:`mgc.hypergraph` (representation and
exhaustive oracle), :mod:`mgc.geometry` (circle intervals and edge classes),
:mod:`mgc.engine` (the coloring procedure), :mod:`mgc.chains` (chains and
certificates), :mod:`mgc.generators`, :mod:`mgc.lll` (Local Lemma evaluation)
and :mod:`mgc.harness` (experiments).
"""

__version__ = "0.1.0"
