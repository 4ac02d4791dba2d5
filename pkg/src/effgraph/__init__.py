"""Effective undirected graphs for directed and signed networks.

Group-deformed Laplacians (magnetic, dilation, sign), frustration-damped
effective weights, Hodge-Helmholtz flow decomposition with potential
rankings, a renormalization flow on effective graphs, undirected measures,
and image-to-digraph mappings.
"""

from .graphs import (DirectedGraph, UndirectedGraph, symmetrize, flux,
                     block_model_sample, load_edge_list, save_edge_list,
                     induced_subgraph, undirected_components)
from .deform import (GroupPotential, DeformedLaplacian, magnetic_potential,
                     dilation_potential, sign_potential, identity_potential,
                     promotion, generalized_degree, combinatorial_laplacian,
                     deformed_laplacian, magnetic_laplacian, dilation_laplacian)
from .spectral import (SpectrumResult, EmbeddingPoint, eigendecompose,
                       first_eigenvector, specific_heat, default_beta_grid, embed)
from .effective import (VertexSignal, EffectiveGraph, edge_discrepancy,
                        generalized_frustration, solve_frustration,
                        effective_weight, effective_graph,
                        log_potential_frustration, dilation_rank)
from .hodge import (HodgeComponents, RankVector, divergence, hodge_decompose,
                    hodge_rank, spring_rank, trophic_levels, spring_energy,
                    component_subgraphs, triangles, support_edges)
from .rgeg import (RgParams, RgFlowState, disparity_filter,
                   laplacian_pseudoinverse, correlation_pairing, contract,
                   rgeg_step, rgeg_flow, level_purity)
from .measures import betweenness, ccdf, knn_degree_correlation, block_density
from .imaging import (IntensityField, img_to_digraph_kernel, img_to_digraph_tanh,
                      img_to_digraph_gradient, segment_magnetic, sobel_gradient,
                      read_pgm, write_pgm)

__version__ = "0.1.0"
