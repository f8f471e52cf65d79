# Charge Gates Module
# Sector structure, Haar sampling and application of two-qudit gates
from .gate import (
    ChargeConservingGate,
    apply_gate,
    assemble_dense,
    gate_phase_00,
    gate_rng,
    sample_gate,
)
from .haar import haar_unitary
from .records import gate_from_record, gate_to_record
from .sectors import ChargeSector, sector_decomposition, sector_sorted_order
