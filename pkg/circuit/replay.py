# Circuit Replay Files
# ====================
# A sampled circuit written as JSON: chain metadata plus one gate record per
# (layer, bond). Loading it back reproduces evolve() output bit for bit.

import json
from pathlib import Path
from typing import Any, Dict, Union

from charge_gates import gate_from_record, gate_to_record
from qudit_state import ChainConfig, DomainError
from .brickwork import BrickworkCircuit, Layer, even_bonds, odd_bonds


def circuit_to_record(circuit: BrickworkCircuit) -> Dict[str, Any]:
    gates = [
        gate_to_record(gate, layer=layer.index, bond=bond)
        for layer in circuit.layers
        for bond, gate in layer.gates()
    ]
    return {
        "N": circuit.config.N,
        "d": circuit.config.d,
        "seed": circuit.config.seed,
        "depth": circuit.depth,
        "key": circuit.key,
        "gates": gates,
    }


def circuit_from_record(record: Dict[str, Any]) -> BrickworkCircuit:
    try:
        chain = ChainConfig(N=int(record["N"]), d=int(record["d"]), seed=int(record.get("seed", 0)))
        depth = int(record["depth"])
        by_position = {
            (int(g["layer"]), int(g["bond"])): gate_from_record(g) for g in record["gates"]
        }
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError(f"malformed circuit record: {e}") from e

    layers = []
    for t in range(1, depth + 1):
        try:
            odd = tuple((b, by_position[(t, b)]) for b in odd_bonds(chain.N))
            even = tuple((b, by_position[(t, b)]) for b in even_bonds(chain.N))
        except KeyError as e:
            raise DomainError(f"circuit record is missing the gate at (layer, bond) = {e}") from e
        layers.append(Layer(index=t, odd=odd, even=even))

    return BrickworkCircuit(config=chain, depth=depth, layers=tuple(layers), key=record.get("key"))


def save_circuit(circuit: BrickworkCircuit, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(circuit_to_record(circuit)), encoding="utf-8")
    return path


def load_circuit(path: Union[str, Path]) -> BrickworkCircuit:
    return circuit_from_record(json.loads(Path(path).read_text(encoding="utf-8")))
