# Circuit Module
# Brickwork circuits U, the modified circuit V, and replay files
from .brickwork import (
    BrickworkCircuit,
    Layer,
    apply_layer,
    evolve,
    evolve_adjoint,
    even_bonds,
    odd_bonds,
    sample_circuit,
    trajectory,
)
from .modified import (
    ModifiedCircuit,
    TelescopingBound,
    apply_modified_layer,
    deviation_state,
    evolve_modified,
    middle_projector_sites,
    modified_trajectory,
    modify_circuit,
    telescoping_bound,
)
from .replay import circuit_from_record, circuit_to_record, load_circuit, save_circuit
