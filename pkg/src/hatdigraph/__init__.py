"""Finite and two-ended periodic digraphs.

Line digraphs, alternets, Property Z, skew-symmetry and window certificates
toward high-arc-transitivity.
"""

from hatdigraph.alternets import (
    Alternet,
    ArcPartition,
    PeriodicAlternets,
    all_alternets_complete_bipartite,
    alternet_digraph,
    alternets,
    alternets_periodic,
    is_degenerate,
    is_loosely_attached,
    reachability_classes,
)
from hatdigraph.analysis import (
    Classification,
    Decomposition,
    DescendantReport,
    HatCertificate,
    SkewSymmetry,
    classify,
    decompose_pl_delta,
    descendants,
    descendants_in_window,
    hat_certificate_window,
    is_skew_symmetric,
    quotient_isomorphism,
)
from hatdigraph.digraph import (
    Digraph,
    complete_bipartite,
    directed_cycle,
    directed_path,
    disjoint_union,
    in_neighbours,
    induced_subdigraph,
    is_connected,
    out_neighbours,
    reverse,
    weak_components,
)
from hatdigraph.errors import (
    ArgumentError,
    CapacityError,
    ClassificationInapplicable,
    HatDigraphError,
    InconsistentVerdict,
    PreconditionError,
)
from hatdigraph.periodic import (
    Connectivity,
    Leveling,
    VoltagePresentation,
    cyclic_quotient,
    derived_connectivity,
    directed_line,
    fibre_size,
    is_derived_connected,
    is_folded,
    layered,
    property_z,
    window,
)
from hatdigraph.symmetry import (
    AutomorphismSet,
    Transitivity,
    arc_orbits,
    automorphisms,
    enumerate_k_arcs,
    is_arc_transitive,
    is_isomorphic,
    is_k_arc_regular,
    is_k_arc_transitive,
    is_vertex_transitive,
    vertex_orbits,
    vertex_stabilizer_order,
)
from hatdigraph.transforms import (
    blow_up,
    delta_p,
    folkman_construction,
    folkman_graph,
    folkman_two_ended,
    ladder,
    pl,
    pl_periodic,
    pl_power,
    pl_times,
    psi_n,
    rooted_tree,
)

__version__ = "0.1.0"
