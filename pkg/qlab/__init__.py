"""Exact constructions of the weighted cube, the subspace lattice and the
symplectic dual polar graph, with machine checks of the identities that
connect them."""
