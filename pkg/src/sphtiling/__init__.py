"""Edge-to-edge tilings of the sphere by regular triangles and rhombi.

Submodules: sphtrig, vertexcomb, counting, catalog, tilingcore, geom, cli.
"""
__version__ = "0.1.0"

from .sphtrig import AngleTriple, alpha_from_edge, areas, beta_from_gamma, edge_from_alpha, residuals
from .vertexcomb import VertexType, enumerate_vertex_types, parse_avc
from .counting import counts_from_avc, euler_identities
from .catalog import (
    Protoset,
    antiprism_family,
    cuboct_family,
    icosahedral_protoset,
    prism_family,
    sporadic,
    verify_protoset,
)
from .errors import (
    CatalogMiss,
    ClosureFailure,
    DomainError,
    FormulaBranch,
    InconsistentAVC,
    RegistryMiss,
    SiteNotFlippable,
    SphTilingError,
)
