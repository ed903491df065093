"""Bigraded Betti numbers and Euler polynomials of moment-angle complexes."""

from .cells import (BigradedBettiTable, BigradedChainComplex, CapExceeded, bigraded_betti,
                    build_wk_complex, build_zk_complex, build_zk_rel_torus, hochster_oracle)
from .complex import (ComplexError, FullSimplexError, ParseError, SimplicialComplex,
                      build_complex, manifold_status, parse_facets)
from .koszul import betti_table, build_koszul_complex, fundamental_class, tor_dimensions
from .reports import (EulerPolynomial, arrangement_descriptor, euler_poly_closed,
                      euler_poly_direct, glb_report, verify_identities)

__version__ = "0.1.0"
