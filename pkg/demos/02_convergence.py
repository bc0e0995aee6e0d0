"""Plug-in estimates converge to the exact oracle values as data grows.

For each unit/drive pair we estimate AIS and icAIS at k=1 from simulated
runs of increasing length and compare against the exact Markov-chain
oracle.
"""

import numpy as np

import infostorage as ist
from infostorage import EmbeddingConfig, ProcessSpec, SymbolSeries, UnitSpec

PAIRS = [
    ("forwarding", ProcessSpec("bernoulli", p=0.5), "fwd / iid"),
    ("forwarding", ProcessSpec("markov_binary", p_stay=0.7), "fwd / markov"),
    ("xor_memory", ProcessSpec("bernoulli", p=0.5), "xor / iid"),
    ("xor_memory", ProcessSpec("markov_binary", p_stay=0.7), "xor / markov"),
]
SIZES = [10**3, 10**4, 10**5, 10**6]

for unit_kind, proc, label in PAIRS:
    joint = ist.oracle_joint(proc, UnitSpec(unit_kind), 1)
    exact_ais = ist.ais(joint, k=1).average_bits
    exact_icais = ist.icais(joint, k=1).average_bits
    print(f"{label}  (oracle: AIS={exact_ais:.6f}, icAIS={exact_icais:.6f})")

    spec = ProcessSpec(proc.kind, p=proc.p, p_stay=proc.p_stay, seed=1)
    u = ist.generate_input(spec, SIZES[-1])
    x = ist.simulate_unit(UnitSpec(unit_kind), u)
    for n in SIZES:
        t = ist.count_joint(
            SymbolSeries(x.alphabet, x.data[:n]),
            SymbolSeries(u.alphabet, u.data[:n]),
            EmbeddingConfig(1),
        )
        ea = ist.ais(t).average_bits
        ec = ist.icais(t).average_bits
        print(
            f"  N={n:>8}: AIS={ea:.6f} (err {abs(ea - exact_ais):.2e})  "
            f"icAIS={ec:.6f} (err {abs(ec - exact_icais):.2e})"
        )
    print()
