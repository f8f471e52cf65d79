# Gate Dump Format
# ================
# JSON records for auditing and replaying sampled gates:
#   {"d": 2, "layer": 1, "bond": 3, "blocks": [[[[re, im], ...], ...], ...]}
# Python's json writes floats with repr(), so a dump/load round trip is bit exact.

from typing import Any, Dict, Optional

import numpy as np

from qudit_state import DomainError
from .gate import ChargeConservingGate


def gate_to_record(
    gate: ChargeConservingGate,
    layer: Optional[int] = None,
    bond: Optional[int] = None,
) -> Dict[str, Any]:
    blocks = [
        [[[float(z.real), float(z.imag)] for z in row] for row in block]
        for block in gate.blocks
    ]
    return {"d": gate.d, "layer": layer, "bond": bond, "blocks": blocks}


def gate_from_record(record: Dict[str, Any]) -> ChargeConservingGate:
    try:
        d = int(record["d"])
        blocks = tuple(
            np.array([[complex(re, im) for re, im in row] for row in block], dtype=np.complex128)
            for block in record["blocks"]
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError(f"malformed gate record: {e}") from e
    return ChargeConservingGate(d, blocks)
